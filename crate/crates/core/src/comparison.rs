//! Misère comparison modulo restricted universes.
//!
//! `G ≥ H` modulo a universe `U` holds when `o(G+X) ≥ o(H+X)` for every `X` in
//! `U`. In general that is only refutable by search, so results are
//! three-valued [`Verdict`]s. Several shapes admit exact procedures modulo
//! binary dicot games, and those verdicts also hold modulo all dicot games:
//!
//! * `H = 0`, any `G`: one solver call on `G + {Bᵢ|0}`.
//! * `G` and `H` binary: a four-condition recursion on options.
//! * `G` dicot, `H` binary with no follower of outcome L: one solver call on
//!   `G + H~ⁱ`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::census::{EnumSpace, Filter};
use crate::context::{ContextTable, FixedSet, Outcomes};
use crate::error::{Error, Precondition, Result};
use crate::game::{GameId, Games};
use crate::solver::{Convention, Outcome};

/// The contexts a comparison quantifies over: trees admitted by `filter`,
/// searched up to birthday `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UniverseSpec {
    pub filter: Filter,
    pub bound: u32,
}

impl UniverseSpec {
    pub fn new(filter: Filter, bound: u32) -> Self {
        UniverseSpec { filter, bound }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Proved,
    Refuted,
    Unknown,
}

/// Which procedure produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Identity,
    BoundedSearch,
    /// `G + {Bᵢ|0}`, for `H = 0`.
    ZeroTest,
    /// Option recursion for two binary games.
    BinaryRecursion,
    /// `G + H~ⁱ`, for dicot `G` against a qualified binary `H`.
    TildeTest,
    /// Impartial canonical forms.
    ImpartialCanonical,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Identity => "identity",
            Method::BoundedSearch => "bounded-search",
            Method::ZeroTest => "zero-test",
            Method::BinaryRecursion => "binary-recursion",
            Method::TildeTest => "tilde-test",
            Method::ImpartialCanonical => "impartial-canonical",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    /// A context `X` in the universe with `o(G+X) ≱ o(H+X)`.
    pub witness: Option<GameId>,
    pub method: Method,
    pub bound_used: Option<u32>,
}

impl Verdict {
    fn proved(method: Method) -> Self {
        Verdict { status: Status::Proved, witness: None, method, bound_used: None }
    }

    pub fn to_json(&self, games: &Games) -> Value {
        let mut v = json!({ "status": self.status, "method": self.method.to_string() });
        if let Some(w) = self.witness {
            v["witness"] = json!(games.braces(w));
        }
        if let Some(b) = self.bound_used {
            v["bound"] = json!(b);
        }
        v
    }
}

/// Where the sub-witnesses of a downlink construction come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubWitness {
    /// First distinguisher among binary dicot games born by the given day.
    Bounded(u32),
    /// Built recursively from the option recursion; always succeeds.
    Recursive,
}

fn at_most_p(o: Outcome) -> bool {
    matches!(o, Outcome::P | Outcome::R)
}

fn at_least_n(o: Outcome) -> bool {
    matches!(o, Outcome::N | Outcome::L)
}

fn at_most_n(o: Outcome) -> bool {
    matches!(o, Outcome::N | Outcome::R)
}

fn at_least_p(o: Outcome) -> bool {
    matches!(o, Outcome::P | Outcome::L)
}

impl Games {
    /// Cached enumeration space.
    pub fn space(&self, filter: Filter, bound: u32) -> Result<Arc<EnumSpace>> {
        if let Some(s) = self.memo.spaces.get(&(filter, bound)) {
            return Ok(Arc::clone(&s));
        }
        let space = Arc::new(self.enumerate(filter, bound)?);
        self.memo.spaces.insert((filter, bound), Arc::clone(&space));
        Ok(space)
    }

    /// Does `x` distinguish `g ≥ h`, i.e. is `o(g+x) ≱ o(h+x)`?
    pub fn distinguishes(&self, g: GameId, h: GameId, x: GameId) -> bool {
        !self.misere_sum(g, x).geq(self.misere_sum(h, x))
    }

    /// Searches the universe for an `X` with `o(G+X) ≱ o(H+X)`. A refutation
    /// breaks one of two clauses: `o(H+X) ≥ P ⇒ o(G+X) ≥ P`, or the same with
    /// N. The first `X` in enumeration order breaking the P clause is
    /// preferred; failing that, the first breaking the N clause.
    pub fn refute_ge_bounded(&self, g: GameId, h: GameId, u: UniverseSpec) -> Result<Verdict> {
        let space = self.space(u.filter, u.bound.saturating_sub(1))?;
        let table = ContextTable::new(FixedSet::new(self, &[g, h]), &space);
        let (ig, ih) = (table.fixed().index_of(g), table.fixed().index_of(h));
        let p_clause = |out: &Outcomes| out.at(ih).geq(Outcome::P) && !out.at(ig).geq(Outcome::P);
        let found = match table.first_match(u.bound, p_clause)? {
            Some(hit) => Some(hit),
            None => table.first_match(u.bound, |out| !out.at(ig).geq(out.at(ih)))?,
        };
        Ok(Verdict {
            status: if found.is_some() { Status::Refuted } else { Status::Unknown },
            witness: found.map(|(_, ctx)| table.materialize(self, &ctx)),
            method: Method::BoundedSearch,
            bound_used: Some(u.bound),
        })
    }

    /// Smallest day by which the universe contains a distinguisher, if any up
    /// to `max_bound`.
    pub fn first_distinguisher(
        &self,
        g: GameId,
        h: GameId,
        filter: Filter,
        max_bound: u32,
    ) -> Result<Option<(u32, GameId)>> {
        let space = self.space(filter, max_bound.saturating_sub(1))?;
        let table = ContextTable::new(FixedSet::new(self, &[g, h]), &space);
        let (ig, ih) = (table.fixed().index_of(g), table.fixed().index_of(h));
        let found = table.first_match(max_bound, |out| !out.at(ig).geq(out.at(ih)))?;
        Ok(found.map(|(day, ctx)| (day, table.materialize(self, &ctx))))
    }

    /// `{Bᵢ|0}` with `i = b(g)`: a binary dicot P-position that Left must be
    /// able to answer when `g ≥ 0`.
    pub fn zero_test_game(&self, g: GameId) -> GameId {
        let b = self.b_game(self.birthday(g)).expect("birthday within index range");
        self.intern(&[b], &[Games::ZERO])
    }

    /// Exact `G ≥ 0` modulo binary dicot games, equivalently modulo dicot games.
    pub fn ge_db_zero(&self, g: GameId) -> bool {
        let t = self.zero_test_game(g);
        !self.misere_sum(g, t).right_first_wins()
    }

    /// Exact `G ≥ H` modulo binary dicot games (equivalently modulo dicot
    /// games) for binary `G` and `H`.
    pub fn ge_binary_db(&self, g: GameId, h: GameId) -> Result<bool> {
        if !self.is_binary(g) {
            return Err(Error::Precondition(Precondition::NotBinary { which: "first" }));
        }
        if !self.is_binary(h) {
            return Err(Error::Precondition(Precondition::NotBinary { which: "second" }));
        }
        Ok(self.ge_bin(g, h))
    }

    pub(crate) fn ge_bin(&self, g: GameId, h: GameId) -> bool {
        if g == h {
            return true;
        }
        if let Some(v) = self.memo.ge_binary.get(&(g, h)) {
            return *v;
        }
        let v = self.failed_condition(g, h).is_none();
        self.memo.ge_binary.insert((g, h), v);
        v
    }

    /// The first of the four option conditions that fails for `G ≥ H`.
    fn failed_condition(&self, g: GameId, h: GameId) -> Option<FailedCondition> {
        if self.is_right_end(g) && !at_most_n(self.misere(h)) {
            return Some(FailedCondition::RightEnd);
        }
        for &gr in self.right(g) {
            let answered = self.right(h).iter().any(|&hr| self.ge_bin(gr, hr))
                || self.left(gr).iter().any(|&grl| self.ge_bin(grl, h));
            if !answered {
                return Some(FailedCondition::RightOption(gr));
            }
        }
        if self.is_left_end(h) && !at_least_n(self.misere(g)) {
            return Some(FailedCondition::LeftEnd);
        }
        for &hl in self.left(h) {
            let answered = self.left(g).iter().any(|&gl| self.ge_bin(gl, hl))
                || self.right(hl).iter().any(|&hlr| self.ge_bin(g, hlr));
            if !answered {
                return Some(FailedCondition::LeftOption(hl));
            }
        }
        None
    }

    /// Exact `G ≥ H` modulo binary dicot games (and dicot games) for dicot `G`
    /// and binary `H` without L-outcome followers.
    pub fn ge_dicot_vs_binary_db(&self, g: GameId, h: GameId) -> Result<Verdict> {
        self.check_tilde_test(g, h)?;
        let i = self.birthday(g).max(self.birthday(h));
        let t = self.tilde(h, i)?;
        if self.misere_sum(g, t).right_first_wins() {
            Ok(Verdict { status: Status::Refuted, witness: Some(t), method: Method::TildeTest, bound_used: None })
        } else {
            Ok(Verdict::proved(Method::TildeTest))
        }
    }

    fn check_tilde_test(&self, g: GameId, h: GameId) -> Result<()> {
        if !self.is_dicot(g) {
            return Err(Error::Precondition(Precondition::NotDicot));
        }
        if !self.is_binary(h) {
            return Err(Error::Precondition(Precondition::NotBinary { which: "second" }));
        }
        if let Some(f) = self.followers(h).into_iter().find(|&f| self.misere(f) == Outcome::L) {
            return Err(Error::Precondition(Precondition::LOutcomeFollower { follower: self.braces(f) }));
        }
        Ok(())
    }

    /// No `Gᴸ ≥ H` and no `Hᴿ ≤ G`, modulo binary dicot games.
    pub fn downlinked_db(&self, g: GameId, h: GameId) -> Result<bool> {
        self.ge_binary_db(g, h)?;
        Ok(!self.left(g).iter().any(|&gl| self.ge_bin(gl, h))
            && !self.right(h).iter().any(|&hr| self.ge_bin(g, hr)))
    }

    /// A binary dicot `T` with `o(G+T) ≤ P ≤ o(H+T)` for downlinked binary `G`
    /// and `H`.
    pub fn build_downlink_witness(&self, g: GameId, h: GameId, source: SubWitness) -> Result<GameId> {
        if !self.downlinked_db(g, h)? {
            return Err(Error::Precondition(Precondition::NotDownlinked));
        }
        // X: o(Gᴸ+X) ≤ P and o(H+X) ≥ N.
        let x = match self.left(g).first() {
            Some(&gl) => Some(self.lower_witness(gl, h, source)?),
            None => None,
        };
        // Y: o(G+Y) ≤ N and o(Hᴿ+Y) ≥ P.
        let y = match self.right(h).first() {
            Some(&hr) => Some(self.upper_witness(g, hr, source)?),
            None => None,
        };
        let left = match (self.right(g).first(), y) {
            (_, Some(y)) => y,
            (Some(&gr), None) => self.adjoint(gr),
            (None, None) => Games::ZERO,
        };
        let right = match (self.left(h).first(), x) {
            (_, Some(x)) => x,
            (Some(&hl), None) => self.adjoint(hl),
            (None, None) => Games::ZERO,
        };
        let t = self.intern(&[left], &[right]);
        debug_assert!(at_most_p(self.misere_sum(g, t)) && at_least_p(self.misere_sum(h, t)));
        Ok(t)
    }

    /// Some distinguisher of `a ≥ b` (known to fail) from `source`.
    fn sub_witness(&self, a: GameId, b: GameId, source: SubWitness) -> Result<GameId> {
        match source {
            SubWitness::Recursive => Ok(self
                .distinguish_binary_db(a, b)?
                .expect("option recursion reported a failure")),
            SubWitness::Bounded(bound) => {
                let v = self.refute_ge_bounded(a, b, UniverseSpec::new(Filter::BinaryDicot, bound))?;
                v.witness.ok_or(Error::WitnessNotFound { bound })
            }
        }
    }

    /// `Y` with `o(A+Y) ≤ P` and `o(B+Y) ≥ N`, for binary `A ≱ B`.
    fn lower_witness(&self, a: GameId, b: GameId, source: SubWitness) -> Result<GameId> {
        let w = self.sub_witness(a, b, source)?;
        if at_most_p(self.misere_sum(a, w)) && at_least_n(self.misere_sum(b, w)) {
            return Ok(w);
        }
        let right = self.left(a).first().map_or(Games::ZERO, |&al| self.adjoint(al));
        Ok(self.intern(&[w], &[right]))
    }

    /// `Z` with `o(A+Z) ≤ N` and `o(B+Z) ≥ P`, for binary `A ≱ B`.
    fn upper_witness(&self, a: GameId, b: GameId, source: SubWitness) -> Result<GameId> {
        let w = self.sub_witness(a, b, source)?;
        if at_most_n(self.misere_sum(a, w)) && at_least_p(self.misere_sum(b, w)) {
            return Ok(w);
        }
        let left = self.right(b).first().map_or(Games::ZERO, |&br| self.adjoint(br));
        Ok(self.intern(&[left], &[w]))
    }

    /// For binary `G ≱ H` (modulo binary dicot games), a binary dicot game
    /// distinguishing them, built from the failed option condition.
    pub fn distinguish_binary_db(&self, g: GameId, h: GameId) -> Result<Option<GameId>> {
        self.ge_binary_db(g, h)?;
        let Some(failed) = self.failed_condition(g, h) else {
            return Ok(None);
        };
        let w = match failed {
            FailedCondition::RightEnd | FailedCondition::LeftEnd => Games::ZERO,
            FailedCondition::RightOption(gr) => self.build_downlink_witness(gr, h, SubWitness::Recursive)?,
            FailedCondition::LeftOption(hl) => self.build_downlink_witness(g, hl, SubWitness::Recursive)?,
        };
        debug_assert!(self.distinguishes(g, h, w));
        Ok(Some(w))
    }

    /// Normal-play `G ≥ H`: Left wins `G - H` moving second.
    pub fn ge_normal(&self, g: GameId, h: GameId) -> bool {
        let d = self.sum(g, self.conjugate(h));
        !self.outcome(d, Convention::Normal).right_first_wins()
    }

    /// Routes `G ≥ H` modulo `u` to the strongest applicable procedure.
    pub fn compare(&self, g: GameId, h: GameId, u: UniverseSpec) -> Result<Verdict> {
        if g == h {
            return Ok(Verdict::proved(Method::Identity));
        }
        let dicot_like = matches!(u.filter, Filter::Dicot | Filter::BinaryDicot);
        let impartial_pair = self.is_impartial(g) && self.is_impartial(h);
        if impartial_pair && u.filter == Filter::Impartial {
            return self.compare_impartial(g, h, u);
        }
        if dicot_like {
            if h == Games::ZERO && (u.filter == Filter::Dicot || u.filter == Filter::BinaryDicot) {
                let holds = self.ge_db_zero(g);
                let fallback = || self.zero_test_game(g);
                return self.exact(g, h, u, holds, Method::ZeroTest, fallback);
            }
            if self.is_binary(g) && self.is_binary(h) {
                let holds = self.ge_bin(g, h);
                let fallback = || {
                    self.distinguish_binary_db(g, h)
                        .ok()
                        .flatten()
                        .expect("binary pair that is not comparable has a witness")
                };
                return self.exact(g, h, u, holds, Method::BinaryRecursion, fallback);
            }
            if self.check_tilde_test(g, h).is_ok() {
                let v = self.ge_dicot_vs_binary_db(g, h)?;
                let holds = v.status == Status::Proved;
                let fallback = || v.witness.expect("tilde test refutes with its test game");
                return self.exact(g, h, u, holds, Method::TildeTest, fallback);
            }
            if impartial_pair && u.filter == Filter::Dicot {
                return self.compare_impartial(g, h, u);
            }
        }
        self.refute_ge_bounded(g, h, u)
    }

    /// Impartial games are either equivalent or incomparable modulo any
    /// universe closed under conjugates, and impartial equivalence carries
    /// over to dicot games.
    fn compare_impartial(&self, g: GameId, h: GameId, u: UniverseSpec) -> Result<Verdict> {
        let holds = self.equivalent_impartial(g, h)?;
        let fallback = || Games::ZERO;
        self.exact(g, h, u, holds, Method::ImpartialCanonical, fallback)
    }

    /// Wraps an exact answer. A refutation is illustrated by a bounded search
    /// at `u.bound`, else the adjoint of `G`, else the procedure's own test
    /// game. Against `H = 0` the adjoint is tried first: `o(G+G°) = P` makes it
    /// the natural refuter of `G ≥ 0`.
    fn exact(
        &self,
        g: GameId,
        h: GameId,
        u: UniverseSpec,
        holds: bool,
        method: Method,
        fallback: impl FnOnce() -> GameId,
    ) -> Result<Verdict> {
        if holds {
            return Ok(Verdict::proved(method));
        }
        let usable = |w: GameId| u.filter.admits(self, w) && self.distinguishes(g, h, w);
        let adj = self.adjoint(g);
        let witness = if method == Method::ZeroTest && usable(adj) {
            Some(adj)
        } else if let Some(w) = self.refute_ge_bounded(g, h, u)?.witness {
            Some(w)
        } else if usable(adj) {
            Some(adj)
        } else {
            Some(fallback()).filter(|&w| usable(w))
        };
        Ok(Verdict { status: Status::Refuted, witness, method, bound_used: None })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FailedCondition {
    /// `G` is a Right end but `o(H)` is P or L.
    RightEnd,
    /// Some `Gᴿ` has no answer.
    RightOption(GameId),
    /// `H` is a Left end but `o(G)` is P or R.
    LeftEnd,
    /// Some `Hᴸ` has no answer.
    LeftOption(GameId),
}
