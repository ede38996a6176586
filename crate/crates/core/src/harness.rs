//! Registry of theorem checks and the reports they produce.
//!
//! Every check reproduces one published result on all games up to small
//! birthday bounds. A check fails only on a violated instance; instances
//! outside a result's hypotheses are counted as filtered, and claims that can
//! only be confirmed by bounded search are reported as unknown when the
//! search comes back empty.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::census::Filter;
use crate::comparison::{Status, SubWitness, UniverseSpec};
use crate::constructions::Named;
use crate::context::{ContextTable, FixedSet};
use crate::error::{Error, Result};
use crate::game::{GameId, Games};
use crate::solver::Outcome;

/// At most this many counterexamples are kept per report.
const MAX_COUNTEREXAMPLES: usize = 32;

pub type Params = BTreeMap<String, u64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub g: String,
    pub h: Option<String>,
    pub x: Option<String>,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub theorem: String,
    pub anchor: String,
    pub params: Params,
    pub status: CheckStatus,
    pub instances_checked: u64,
    pub instances_filtered: u64,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

/// Accumulates the outcome of one check.
pub struct Recorder {
    id: String,
    params: Params,
    checked: u128,
    filtered: u128,
    failures: u64,
    counterexamples: Vec<Counterexample>,
    notes: Vec<String>,
    unknown: bool,
    start: Instant,
}

impl Recorder {
    pub fn new(id: &str) -> Self {
        Recorder {
            id: id.to_owned(),
            params: Params::new(),
            checked: 0,
            filtered: 0,
            failures: 0,
            counterexamples: Vec::new(),
            notes: Vec::new(),
            unknown: false,
            start: Instant::now(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<u64>) -> &mut Self {
        self.params.insert(key.to_owned(), value.into());
        self
    }

    pub fn checked(&mut self, n: u128) {
        self.checked = self.checked.saturating_add(n);
    }

    pub fn filtered(&mut self, n: u128) {
        self.filtered = self.filtered.saturating_add(n);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Marks a search-bounded claim as unconfirmed.
    pub fn unknown(&mut self, note: impl Into<String>) {
        self.unknown = true;
        self.note(note);
    }

    pub fn fail(&mut self, games: &Games, g: GameId, h: Option<GameId>, x: Option<GameId>, expected: &str, got: &str) {
        self.failures += 1;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(Counterexample {
                g: games.braces(g),
                h: h.map(|h| games.braces(h)),
                x: x.map(|x| games.braces(x)),
                expected: expected.to_owned(),
                got: got.to_owned(),
            });
        }
    }

    /// Records one instance, failing it unless `got == expected`.
    fn expect<T: PartialEq + std::fmt::Display>(
        &mut self,
        games: &Games,
        at: (GameId, Option<GameId>, Option<GameId>),
        expected: T,
        got: T,
    ) {
        self.checked(1);
        if got != expected {
            self.fail(games, at.0, at.1, at.2, &expected.to_string(), &got.to_string());
        }
    }

    pub fn finish(mut self) -> Report {
        if self.failures as usize > self.counterexamples.len() {
            self.notes.push(format!("{} failing instances, first {} listed", self.failures, self.counterexamples.len()));
        }
        let saturate = |n: u128| u64::try_from(n).unwrap_or(u64::MAX);
        if self.checked > u64::MAX as u128 {
            self.notes.push("instance count exceeds 2^64 and is saturated".into());
        }
        let status = if self.failures > 0 {
            CheckStatus::Fail
        } else if self.unknown {
            CheckStatus::Unknown
        } else {
            CheckStatus::Pass
        };
        Report {
            anchor: anchor(&self.id).unwrap_or_default().to_owned(),
            theorem: self.id,
            params: self.params,
            status,
            instances_checked: saturate(self.checked),
            instances_filtered: saturate(self.filtered),
            counterexamples: self.counterexamples,
            notes: self.notes,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

type Runner = fn(&Games, &Args, &mut Recorder) -> Result<()>;

/// One registry entry.
pub struct TheoremCheck {
    pub id: &'static str,
    pub anchor: &'static str,
    pub defaults: &'static [(&'static str, u64)],
    run: Runner,
}

struct Args<'a>(&'a Params);

impl Args<'_> {
    fn get(&self, key: &str) -> u32 {
        self.0[key].min(u32::MAX as u64) as u32
    }

    fn raw(&self, key: &str) -> u64 {
        self.0[key]
    }
}

static REGISTRY: &[TheoremCheck] = &[
    TheoremCheck {
        id: "adjoint-sum",
        anchor: "G + G° is a misère P-position for every game G",
        defaults: &[("g_bound", 2)],
        run: check_adjoint_sum,
    },
    TheoremCheck {
        id: "adjout",
        anchor: "for binary G the outcome of G° (and of G~ⁱ, i ≥ b(G)) is determined by o(G): L→L, R→R, N→P, P→N",
        defaults: &[("g_bound", 3)],
        run: check_adjout,
    },
    TheoremCheck {
        id: "b2d",
        anchor: "for dicot G and binary H with no L-outcome follower, G ≥ H modulo dicot games iff modulo binary dicot games iff Left wins G + H~ⁱ second",
        defaults: &[("g_bound", 2), ("h_bound", 3), ("dist_bound", 3)],
        run: check_b2d,
    },
    TheoremCheck {
        id: "b2d0",
        anchor: "G ≥ 0 modulo dicot games iff modulo binary dicot games iff Left wins G + {Bᵢ|0} second",
        defaults: &[("g_bound", 2), ("samples", 200), ("sample_bound", 3), ("dist_bound", 3), ("seed", 2024)],
        run: check_b2d0,
    },
    TheoremCheck {
        id: "b2db",
        anchor: "for binary G and H, G ≥ H modulo dicot games iff modulo binary dicot games, decided by the option recursion",
        defaults: &[("g_bound", 2), ("order_bound", 3), ("dist_bound", 3)],
        run: check_b2db,
    },
    TheoremCheck {
        id: "binrec-witness",
        anchor: "for binary G ≱ H modulo binary dicot games a binary dicot distinguisher exists and is built from the failed option condition",
        defaults: &[("g_bound", 2), ("max_bound", 5)],
        run: check_binrec_witness,
    },
    TheoremCheck {
        id: "canonical-impartial",
        anchor: "impartial misère canonical forms are unique per equivalence class; reversible options are removed",
        defaults: &[("idem_bound", 4), ("pairs_bound", 3), ("dist_bound", 4)],
        run: check_canonical_impartial,
    },
    TheoremCheck {
        id: "carac-counterexamples",
        anchor: "the tilde test needs G dicot, H binary, and no L-outcome follower of H",
        defaults: &[("dist_bound", 3)],
        run: check_carac_counterexamples,
    },
    TheoremCheck {
        id: "census-bd3",
        anchor: "26 binary dicot trees are born by day 3, and 13 of them are in canonical form",
        defaults: &[],
        run: check_census_bd3,
    },
    TheoremCheck {
        id: "companions",
        anchor: "for b(G) ≤ i: o(G+Bᵢ)=R, o(G+conj(Bᵢ))=L, o(G+{conj(Bᵢ)|Bᵢ})=N; the adjoint companions force P, N, L, R",
        defaults: &[("g_bound", 2), ("i", 2)],
        run: check_companions,
    },
    TheoremCheck {
        id: "di-ext",
        anchor: "o(X + n·{·|I}) = L for every impartial X and n ≥ 1",
        defaults: &[("x_bound", 3), ("n_max", 2)],
        run: check_di_ext,
    },
    TheoremCheck {
        id: "dicot3-approx",
        anchor: "1268 classes of dicot games born by day 3 (bounded-distinguisher lower approximation)",
        defaults: &[("max_dist_bound", 2)],
        run: check_dicot3_approx,
    },
    TheoremCheck {
        id: "downlink",
        anchor: "binary G ≥ H implies no Gᴿ downlinked to H and G downlinked to no Hᴸ; downlinked pairs admit a binary dicot T with o(G+T) ≤ P ≤ o(H+T)",
        defaults: &[("g_bound", 2)],
        run: check_downlink,
    },
    TheoremCheck {
        id: "ge0-outcome",
        anchor: "a binary game G ≥ 0 modulo binary dicot games has misère outcome N",
        defaults: &[("g_bound", 3)],
        run: check_ge0_outcome,
    },
    TheoremCheck {
        id: "geq-eq",
        anchor: "a binary G ≥ 0 with some Gᴸᴿ = 0 is equivalent to 0 modulo binary dicot games",
        defaults: &[("g_bound", 3), ("dist_bound", 3)],
        run: check_geq_eq,
    },
    TheoremCheck {
        id: "ggir",
        anchor: "o(G + Bᵢ) = R for every game G and every i ≥ b(G)",
        defaults: &[("g_bound", 2), ("i", 2)],
        run: check_ggir,
    },
    TheoremCheck {
        id: "i-counterexamples",
        anchor: "I ≥ 0 and I ≡ {I|I} modulo impartial games, yet neither holds modulo dicot games (witness I°)",
        defaults: &[("x_bound", 3)],
        run: check_i_counterexamples,
    },
    TheoremCheck {
        id: "i2d",
        anchor: "impartial games equivalent modulo impartial games are equivalent modulo dicot games",
        defaults: &[("pairs_bound", 3), ("dist_bound", 3)],
        run: check_i2d,
    },
    TheoremCheck {
        id: "il",
        anchor: "o(I + X) = L for every impartial X",
        defaults: &[("x_bound", 3)],
        run: check_il,
    },
    TheoremCheck {
        id: "outcome-table",
        anchor: "misère outcomes of 0, *, 1, B₀, Z, Ga, I and S",
        defaults: &[],
        run: check_outcome_table,
    },
    TheoremCheck {
        id: "s-ge",
        anchor: "S ≥ G modulo dicot games for every binary impartial G",
        defaults: &[("max_i", 5), ("dist_bound", 3)],
        run: check_s_ge,
    },
    TheoremCheck {
        id: "s-incomparable",
        anchor: "G and sᵢ are incomparable whenever i ≥ b(G) + 1, by o(G+i)=R and o(sᵢ+i) ≥ N",
        defaults: &[("max_i", 4)],
        run: check_s_incomparable,
    },
    TheoremCheck {
        id: "tilde-sum",
        anchor: "G + G~ⁱ is a misère P-position for binary G and i ≥ b(G)",
        defaults: &[("g_bound", 3)],
        run: check_tilde_sum,
    },
    TheoremCheck {
        id: "z-gt-zero",
        anchor: "Z > 0 modulo binary dicot games, strictly: o(0+Ga)=R while o(Z+Ga)=L",
        defaults: &[("dist_bound", 2)],
        run: check_z_gt_zero,
    },
];

/// All registered checks, ordered by id.
pub fn registry() -> &'static [TheoremCheck] {
    REGISTRY
}

fn anchor(id: &str) -> Option<&'static str> {
    REGISTRY.iter().find(|c| c.id == id).map(|c| c.anchor)
}

fn find(id: &str) -> Result<&'static TheoremCheck> {
    REGISTRY.iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownCheck(id.to_owned()))
}

/// Runs one check with `overrides` applied to its default parameters.
pub fn run_check(games: &Games, id: &str, overrides: &Params) -> Result<Report> {
    let check = find(id)?;
    for key in overrides.keys() {
        if !check.defaults.iter().any(|(k, _)| k == key) {
            return Err(Error::InvalidParam { name: key.clone(), reason: format!("not a parameter of {id}") });
        }
    }
    run_with(games, check, overrides)
}

fn run_with(games: &Games, check: &TheoremCheck, overrides: &Params) -> Result<Report> {
    let mut params: Params = check.defaults.iter().map(|&(k, v)| (k.to_owned(), v)).collect();
    for (k, v) in overrides {
        if params.contains_key(k) {
            params.insert(k.clone(), *v);
        }
    }
    let mut rec = Recorder::new(check.id);
    rec.params = params.clone();
    (check.run)(games, &Args(&params), &mut rec)?;
    Ok(rec.finish())
}

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    /// Restrict to these ids; all checks when `None`.
    pub only: Option<Vec<String>>,
    /// Applied to every selected check that has the parameter.
    pub overrides: Params,
}

/// Runs the selected checks in parallel; reports come back ordered by id.
pub fn run_all(games: &Games, config: &RunConfig) -> Result<Vec<Report>> {
    let selected: Vec<&TheoremCheck> = match &config.only {
        None => REGISTRY.iter().collect(),
        Some(ids) => {
            let mut v = ids.iter().map(|id| find(id)).collect::<Result<Vec<_>>>()?;
            v.sort_by_key(|c| c.id);
            v.dedup_by_key(|c| c.id);
            v
        }
    };
    for key in config.overrides.keys() {
        if !selected.iter().any(|c| c.defaults.iter().any(|(k, _)| k == key)) {
            return Err(Error::InvalidParam { name: key.clone(), reason: "no selected check uses it".into() });
        }
    }
    selected.par_iter().map(|c| run_with(games, c, &config.overrides)).collect()
}

/// Parses `k=v,k=v`.
pub fn parse_overrides(text: &str) -> Result<Params> {
    let mut out = Params::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::InvalidParam {
            name: part.to_owned(),
            reason: "expected key=value".into(),
        })?;
        let v = v.trim().parse::<u64>().map_err(|e| Error::InvalidParam {
            name: k.trim().to_owned(),
            reason: e.to_string(),
        })?;
        out.insert(k.trim().to_owned(), v);
    }
    Ok(out)
}

/// A violated instance found while scanning contexts.
struct Miss {
    g: GameId,
    h: Option<GameId>,
    expected: String,
    got: String,
}

/// Runs `check` on every tree `X` admitted by `filter` and born by `bound`,
/// given the outcomes of `r + X` for every follower `r` of the roots. Trees
/// with identical outcomes are checked once, as a class.
fn over_contexts<F>(games: &Games, rec: &mut Recorder, roots: &[GameId], filter: Filter, bound: u32, check: F) -> Result<()>
where
    F: Fn(&dyn Fn(GameId) -> Outcome) -> Option<Miss>,
{
    let base = games.space(filter, bound.saturating_sub(1))?;
    let table = ContextTable::new(FixedSet::new(games, roots), &base);
    let base_len = if bound == 0 { 0 } else { base.len() };
    let mut total: u128 = 0;
    let mut misses = Vec::new();
    table.visit_next_level(base_len, |ctx, out| {
        total = total.saturating_add(ctx.count);
        let at = |g: GameId| out.at(table.fixed().index_of(g));
        if let Some(m) = check(&at) {
            misses.push((table.materialize(games, ctx), m));
        }
    })?;
    rec.checked(total);
    for (x, m) in misses {
        rec.fail(games, m.g, m.h, Some(x), &m.expected, &m.got);
    }
    Ok(())
}

fn miss(g: GameId, h: Option<GameId>, expected: impl ToString, got: impl ToString) -> Option<Miss> {
    Some(Miss { g, h, expected: expected.to_string(), got: got.to_string() })
}

fn named(games: &Games, name: Named) -> GameId {
    games.named(name).expect("named games are in range")
}

fn check_outcome_table(games: &Games, _: &Args, rec: &mut Recorder) -> Result<()> {
    use Outcome::*;
    let table = [
        (Named::Zero, N),
        (Named::Star, P),
        (Named::Int(1), R),
        (Named::B(0), R),
        (Named::Z, N),
        (Named::Ga, R),
        (Named::I, L),
        (Named::S, L),
    ];
    for (name, expected) in table {
        let g = named(games, name);
        rec.expect(games, (g, None, None), expected, games.misere(g));
    }
    Ok(())
}

fn check_il(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let i = named(games, Named::I);
    over_contexts(games, rec, &[i], Filter::Impartial, args.get("x_bound"), |at| {
        (at(i) != Outcome::L).then(|| miss(i, None, Outcome::L, at(i))).flatten()
    })
}

fn check_ggir(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let (bound, i) = (args.get("g_bound"), args.get("i"));
    if i < bound {
        return Err(Error::InvalidParam { name: "i".into(), reason: "must be at least g_bound".into() });
    }
    let b = games.b_game(i)?;
    over_contexts(games, rec, &[b], Filter::All, bound, |at| {
        (at(b) != Outcome::R).then(|| miss(b, None, Outcome::R, at(b))).flatten()
    })
}

fn check_companions(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let (bound, i) = (args.get("g_bound"), args.get("i"));
    let space = games.space(Filter::All, bound)?;
    for &g in space.members() {
        let bc = games.bi_companions(g, i)?;
        let c = games.companions(g);
        let cases = [
            (bc.for_r, Outcome::R),
            (bc.for_l, Outcome::L),
            (bc.for_n, Outcome::N),
            (c.for_p, Outcome::P),
            (c.for_n, Outcome::N),
            (c.for_l, Outcome::L),
            (c.for_r, Outcome::R),
        ];
        for (x, expected) in cases {
            rec.expect(games, (g, None, Some(x)), expected, games.misere_sum(g, x));
        }
    }
    Ok(())
}

fn check_adjoint_sum(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let space = games.space(Filter::All, args.get("g_bound"))?;
    for &g in space.members() {
        let adj = games.adjoint(g);
        rec.expect(games, (g, None, Some(adj)), Outcome::P, games.misere_sum(g, adj));
        if !games.is_dicot(adj) {
            rec.fail(games, g, None, Some(adj), "dicot adjoint", "non-dicot adjoint");
        }
    }
    Ok(())
}

/// The outcome of `G°` forced by the outcome of a binary `G`.
fn adjoint_outcome(o: Outcome) -> Outcome {
    match o {
        Outcome::L => Outcome::L,
        Outcome::R => Outcome::R,
        Outcome::N => Outcome::P,
        Outcome::P => Outcome::N,
    }
}

fn check_adjout(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let space = games.space(Filter::Binary, args.get("g_bound"))?;
    for &g in space.members() {
        let expected = adjoint_outcome(games.misere(g));
        let adj = games.adjoint(g);
        rec.expect(games, (adj, None, None), expected, games.misere(adj));
        let t = games.tilde(g, games.birthday(g))?;
        rec.expect(games, (t, None, None), expected, games.misere(t));
        for (w, what) in [(adj, "adjoint"), (t, "tilde")] {
            if !(games.is_binary(w) && games.is_dicot(w)) {
                rec.fail(games, g, None, Some(w), &format!("binary dicot {what}"), "not binary dicot");
            }
        }
    }
    // Without binarity the table breaks: o({0,*|0}) = L but its adjoint is N.
    let star = games.star();
    let g = games.intern(&[Games::ZERO, star], &[Games::ZERO]);
    rec.expect(games, (g, None, None), Outcome::L, games.misere(g));
    let adj = games.adjoint(g);
    rec.expect(games, (adj, None, None), Outcome::N, games.misere(adj));
    Ok(())
}

fn check_tilde_sum(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let space = games.space(Filter::Binary, args.get("g_bound"))?;
    for &g in space.members() {
        let t = games.tilde(g, games.birthday(g))?;
        rec.expect(games, (g, None, Some(t)), Outcome::P, games.misere_sum(g, t));
    }
    Ok(())
}

fn check_ge0_outcome(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let space = games.space(Filter::Binary, args.get("g_bound"))?;
    for &g in space.members() {
        if games.ge_db_zero(g) {
            rec.expect(games, (g, None, None), Outcome::N, games.misere(g));
        } else {
            rec.filtered(1);
        }
    }
    Ok(())
}

fn check_geq_eq(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let space = games.space(Filter::Binary, args.get("g_bound"))?;
    let u = UniverseSpec::new(Filter::BinaryDicot, args.get("dist_bound"));
    for &g in space.members() {
        let reverses_to_zero = games
            .left(g)
            .iter()
            .any(|&gl| games.right(gl).contains(&Games::ZERO));
        if !(reverses_to_zero && games.ge_db_zero(g)) {
            rec.filtered(1);
            continue;
        }
        rec.checked(1);
        if !games.ge_bin(Games::ZERO, g) {
            rec.fail(games, Games::ZERO, Some(g), None, "0 ≥ G by the option recursion", "recursion fails");
        }
        if let Some(x) = games.refute_ge_bounded(Games::ZERO, g, u)?.witness {
            rec.fail(games, Games::ZERO, Some(g), Some(x), "no distinguisher", "distinguished");
        }
    }
    Ok(())
}

fn check_z_gt_zero(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let z = named(games, Named::Z);
    let ga = named(games, Named::Ga);
    let zero = Games::ZERO;
    rec.expect(games, (z, Some(zero), None), true, games.ge_db_zero(z));
    rec.expect(games, (z, Some(zero), None), true, games.ge_bin(z, zero));
    rec.expect(games, (zero, Some(z), None), false, games.ge_bin(zero, z));
    let v = games.refute_ge_bounded(zero, z, UniverseSpec::new(Filter::BinaryDicot, args.get("dist_bound")))?;
    let shown = |w: Option<GameId>| w.map_or("none".to_owned(), |w| games.braces(w));
    rec.expect(games, (zero, Some(z), None), shown(Some(ga)), shown(v.witness));
    rec.expect(games, (zero, None, Some(ga)), Outcome::R, games.misere_sum(zero, ga));
    rec.expect(games, (z, None, Some(ga)), Outcome::L, games.misere_sum(z, ga));
    Ok(())
}

fn check_s_incomparable(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    for i in 1..=args.get("max_i") {
        let int = games.integer(i)?;
        let bar = games.conjugate(int);
        let s = games.s_game(i)?;
        over_contexts(games, rec, &[int, bar], Filter::All, i - 1, |at| {
            if at(int) != Outcome::R {
                return miss(int, None, Outcome::R, at(int));
            }
            if at(bar) != Outcome::L {
                return miss(bar, None, Outcome::L, at(bar));
            }
            None
        })?;
        let up = games.misere_sum(s, int);
        rec.expect(games, (s, None, Some(int)), true, up.geq(Outcome::N));
        let down = games.misere_sum(s, bar);
        rec.expect(games, (s, None, Some(bar)), true, Outcome::N.geq(down));
    }
    Ok(())
}

fn check_s_ge(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let big_s = named(games, Named::S);
    let u = UniverseSpec::new(Filter::Dicot, args.get("dist_bound"));
    for i in 0..=args.get("max_i") {
        let s = games.s_game(i)?;
        let exact = games.ge_dicot_vs_binary_db(big_s, s)?;
        rec.expect(games, (big_s, Some(s), None), Status::Proved.to_str(), exact.status.to_str());
        if let Some(x) = games.refute_ge_bounded(big_s, s, u)?.witness {
            rec.fail(games, big_s, Some(s), Some(x), "no dicot distinguisher", "distinguished");
        }
    }
    Ok(())
}

fn check_b2d0(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let mut pool = games.space(Filter::Dicot, args.get("g_bound"))?.members().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(args.raw("seed"));
    pool.extend(games.sample(Filter::Dicot, args.get("sample_bound"), args.get("samples") as usize, &mut rng)?);
    let u = UniverseSpec::new(Filter::Dicot, args.get("dist_bound"));
    for g in pool {
        rec.checked(1);
        if games.ge_db_zero(g) {
            if let Some(x) = games.refute_ge_bounded(g, Games::ZERO, u)?.witness {
                rec.fail(games, g, Some(Games::ZERO), Some(x), "no dicot distinguisher", "distinguished");
            }
            if !games.ge_normal(g, Games::ZERO) {
                rec.fail(games, g, Some(Games::ZERO), None, "G ≥ 0 in normal play", "not ≥ 0");
            }
        } else {
            let t = games.zero_test_game(g);
            let (og, o0) = (games.misere_sum(g, t), games.misere(t));
            if og.geq(Outcome::P) || o0 != Outcome::P {
                rec.fail(games, g, Some(Games::ZERO), Some(t), "o(G+T) ≱ P and o(T) = P", &format!("{og} and {o0}"));
            }
        }
    }
    Ok(())
}

fn check_b2db(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let members = games.space(Filter::Binary, args.get("g_bound"))?.members().to_vec();
    let u = UniverseSpec::new(Filter::Dicot, args.get("dist_bound"));
    let mut refuted_by_search = 0u64;
    for &g in &members {
        for &h in &members {
            rec.checked(1);
            let holds = games.ge_bin(g, h);
            let found = games.refute_ge_bounded(g, h, u)?.witness;
            match (holds, found) {
                (true, Some(x)) => rec.fail(games, g, Some(h), Some(x), "no dicot distinguisher", "distinguished"),
                (false, Some(_)) => refuted_by_search += 1,
                _ => {}
            }
            if holds && !games.ge_normal(g, h) {
                rec.fail(games, g, Some(h), None, "G ≥ H in normal play", "not ≥");
            }
            if holds && !games.misere(g).geq(games.misere(h)) {
                rec.fail(games, g, Some(h), None, "o(G) ≥ o(H)", "outcomes out of order");
            }
        }
    }
    rec.note(format!("{refuted_by_search} non-comparable pairs also refuted by search"));

    let bd = games.space(Filter::BinaryDicot, args.get("order_bound"))?.members().to_vec();
    let ge: Vec<Vec<bool>> = bd.iter().map(|&a| bd.iter().map(|&b| games.ge_bin(a, b)).collect()).collect();
    for a in 0..bd.len() {
        rec.expect(games, (bd[a], Some(bd[a]), None), true, ge[a][a]);
        for b in 0..bd.len() {
            for c in 0..bd.len() {
                if ge[a][b] && ge[b][c] {
                    rec.expect(games, (bd[a], Some(bd[c]), Some(bd[b])), true, ge[a][c]);
                }
            }
        }
    }
    Ok(())
}

fn check_b2d(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let gs = games.space(Filter::Dicot, args.get("g_bound"))?.members().to_vec();
    let hs = games.space(Filter::Binary, args.get("h_bound"))?.members().to_vec();
    let u = UniverseSpec::new(Filter::Dicot, args.get("dist_bound"));
    for &h in &hs {
        if games.followers(h).iter().any(|&f| games.misere(f) == Outcome::L) {
            rec.filtered(gs.len() as u128);
            continue;
        }
        for &g in &gs {
            rec.checked(1);
            let v = games.ge_dicot_vs_binary_db(g, h)?;
            match v.status {
                Status::Proved => {
                    if let Some(x) = games.refute_ge_bounded(g, h, u)?.witness {
                        rec.fail(games, g, Some(h), Some(x), "no dicot distinguisher", "distinguished");
                    }
                }
                _ => {
                    let t = v.witness.expect("tilde test refutes with a witness");
                    if !games.distinguishes(g, h, t) {
                        rec.fail(games, g, Some(h), Some(t), "tilde game distinguishes", "does not");
                    }
                }
            }
            if games.is_binary(g) && games.ge_bin(g, h) != (v.status == Status::Proved) {
                rec.fail(games, g, Some(h), None, "tilde test agrees with option recursion", "disagrees");
            }
        }
    }
    Ok(())
}

fn check_binrec_witness(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let members = games.space(Filter::Binary, args.get("g_bound"))?.members().to_vec();
    let max_bound = args.get("max_bound");
    let mut deepest = 0;
    let mut missing = 0u64;
    for &g in &members {
        for &h in &members {
            if games.ge_bin(g, h) {
                rec.filtered(1);
                continue;
            }
            rec.checked(1);
            let w = games.distinguish_binary_db(g, h)?.expect("failed recursion yields a witness");
            if !(games.is_binary(w) && games.is_dicot(w) && games.distinguishes(g, h, w)) {
                rec.fail(games, g, Some(h), Some(w), "binary dicot distinguisher", "invalid witness");
            }
            match games.first_distinguisher(g, h, Filter::BinaryDicot, max_bound)? {
                Some((day, _)) => deepest = deepest.max(day),
                None => missing += 1,
            }
        }
    }
    rec.note(format!("largest birthday needed by a searched distinguisher: {deepest}"));
    if missing > 0 {
        rec.unknown(format!("{missing} pairs have no binary dicot distinguisher born by day {max_bound}"));
    }
    Ok(())
}

fn check_downlink(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let members = games.space(Filter::Binary, args.get("g_bound"))?.members().to_vec();
    for &g in &members {
        for &h in &members {
            if games.ge_bin(g, h) {
                for &gr in games.right(g) {
                    rec.expect(games, (gr, Some(h), None), false, games.downlinked_db(gr, h)?);
                }
                for &hl in games.left(h) {
                    rec.expect(games, (g, Some(hl), None), false, games.downlinked_db(g, hl)?);
                }
            }
            if !games.downlinked_db(g, h)? {
                continue;
            }
            for source in [SubWitness::Recursive, SubWitness::Bounded(4)] {
                let t = match games.build_downlink_witness(g, h, source) {
                    Ok(t) => t,
                    Err(Error::WitnessNotFound { bound }) => {
                        rec.unknown(format!("no sub-witness born by day {bound} for a downlinked pair"));
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let (og, oh) = (games.misere_sum(g, t), games.misere_sum(h, t));
                let ok = Outcome::P.geq(og) && oh.geq(Outcome::P) && games.is_binary(t) && games.is_dicot(t);
                rec.expect(games, (g, Some(h), Some(t)), "o(G+T) ≤ P ≤ o(H+T)".to_owned(), if ok {
                    "o(G+T) ≤ P ≤ o(H+T)".to_owned()
                } else {
                    format!("o(G+T) = {og}, o(H+T) = {oh}")
                });
            }
        }
    }
    Ok(())
}

fn check_i2d(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    games.check_i_to_d(rec, args.get("pairs_bound"), args.get("dist_bound"))
}

fn check_i_counterexamples(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let i = named(games, Named::I);
    let ii = games.intern(&[i], &[i]);
    over_contexts(games, rec, &[i, ii], Filter::Impartial, args.get("x_bound"), |at| {
        [i, ii].into_iter().find(|&g| at(g) != Outcome::L).and_then(|g| miss(g, None, Outcome::L, at(g)))
    })?;
    let adj = games.adjoint(i);
    rec.expect(games, (i, None, Some(adj)), Outcome::P, games.misere_sum(i, adj));
    rec.expect(games, (Games::ZERO, None, Some(adj)), Outcome::L, games.misere(adj));
    rec.expect(games, (ii, None, Some(adj)), Outcome::N, games.misere_sum(ii, adj));
    rec.expect(games, (adj, None, None), 4, games.birthday(adj));
    Ok(())
}

fn check_di_ext(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let i = named(games, Named::I);
    let unit = games.intern(&[], &[i]);
    let roots: Vec<GameId> = (1..=args.get("n_max")).map(|n| games.multiple(unit, n)).collect();
    over_contexts(games, rec, &roots, Filter::Impartial, args.get("x_bound"), |at| {
        roots.iter().find(|&&r| at(r) != Outcome::L).and_then(|&r| miss(r, None, Outcome::L, at(r)))
    })
}

fn check_census_bd3(games: &Games, _: &Args, rec: &mut Recorder) -> Result<()> {
    let census = games.census_binary_dicot(3)?;
    rec.expect(games, (Games::ZERO, None, None), 26, census.trees);
    rec.expect(games, (Games::ZERO, None, None), 13, census.classes);
    rec.note(format!("{} trees, {} classes, {} canonical members", census.trees, census.classes, census.canonical));
    if census.canonical != census.classes || !census.one_canonical_per_class {
        rec.note("canonical members do not match classes one to one");
    }
    Ok(())
}

fn check_canonical_impartial(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let space = games.space(Filter::Impartial, args.get("idem_bound"))?;
    for &g in space.members() {
        let c = games.canonical_impartial(g)?;
        rec.expect(games, (g, None, None), games.braces(c), games.braces(games.canonical_impartial(c)?));
        let mut options: Vec<GameId> = games.left(g).iter().map(|&o| games.canonical_impartial(o)).collect::<Result<_>>()?;
        options.sort_unstable();
        options.dedup();
        let targets = games.reversal_targets(&options);
        if targets.len() > 1 {
            rec.fail(games, g, None, None, "at most one reversal target", &format!("{} targets", targets.len()));
        }
    }
    let members = games.space(Filter::Impartial, args.get("pairs_bound"))?.members().to_vec();
    let u = UniverseSpec::new(Filter::Impartial, args.get("dist_bound"));
    let mut unseparated = 0u64;
    for (k, &g) in members.iter().enumerate() {
        for &h in &members[k + 1..] {
            rec.checked(1);
            let found = games.refute_ge_bounded(g, h, u)?.witness;
            match (games.equivalent_impartial(g, h)?, found) {
                (true, Some(x)) => rec.fail(games, g, Some(h), Some(x), "no impartial distinguisher", "distinguished"),
                (false, None) => unseparated += 1,
                _ => {}
            }
        }
    }
    if unseparated > 0 {
        rec.unknown(format!("{unseparated} inequivalent pairs lack an impartial distinguisher in range"));
    }
    Ok(())
}

fn check_carac_counterexamples(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let star = games.star();
    let one = games.integer(1)?;
    let h2 = games.parse_game("{{0|0,*}|0}")?;
    let z = named(games, Named::Z);
    let u = UniverseSpec::new(Filter::BinaryDicot, args.get("dist_bound"));
    for (g, h, i) in [(one, star, 1), (Games::ZERO, h2, 0), (Games::ZERO, z, 0)] {
        // The tilde test answers yes, yet G ≱ H.
        let t = games.tilde(h, i)?;
        rec.expect(games, (g, Some(h), Some(t)), true, !games.misere_sum(g, t).right_first_wins());
        match games.refute_ge_bounded(g, h, u)?.witness {
            Some(_) => rec.checked(1),
            None => rec.unknown("no distinguisher found for a precondition counterexample"),
        }
        rec.expect(games, (g, Some(h), None), true, games.ge_dicot_vs_binary_db(g, h).is_err());
    }
    Ok(())
}

fn check_dicot3_approx(games: &Games, args: &Args, rec: &mut Recorder) -> Result<()> {
    let mut previous = 0;
    for d in 0..=args.get("max_dist_bound") {
        let classes = games.census_dicot_approx(3, d)?;
        rec.note(format!("distinguishers born by day {d}: {classes} classes"));
        rec.expect(games, (Games::ZERO, None, None), true, classes <= 1268);
        rec.expect(games, (Games::ZERO, None, None), true, classes >= previous);
        previous = classes;
    }
    Ok(())
}

/// Result of classifying the binary dicot trees of a bounded space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryDicotCensus {
    pub bound: u32,
    pub trees: usize,
    pub classes: usize,
    pub canonical: usize,
    pub one_canonical_per_class: bool,
    /// Canonical members, in brace notation.
    pub forms: Vec<String>,
}

impl Games {
    /// Classifies binary dicot trees born by `bound` under mutual `≥` modulo
    /// binary dicot games, and counts the trees in canonical form.
    pub fn census_binary_dicot(&self, bound: u32) -> Result<BinaryDicotCensus> {
        let space = self.space(Filter::BinaryDicot, bound)?;
        let table = crate::census::classify(&space, |a, b| self.ge_bin(a, b) && self.ge_bin(b, a));
        let canonical: Vec<usize> = (0..space.len()).filter(|&k| self.is_binary_canonical(space.get(k))).collect();
        let one_per_class = table
            .classes
            .iter()
            .all(|class| class.iter().filter(|k| canonical.contains(k)).count() == 1);
        Ok(BinaryDicotCensus {
            bound,
            trees: space.len(),
            classes: table.len(),
            canonical: canonical.len(),
            one_canonical_per_class: one_per_class,
            forms: canonical.iter().map(|&k| self.braces(space.get(k))).collect(),
        })
    }

    /// No follower has a reversible option: a Left option `Fᴸ` with some
    /// `Fᴸᴿ ≤ F`, or a Right option `Fᴿ` with some `Fᴿᴸ ≥ F`.
    fn is_binary_canonical(&self, g: GameId) -> bool {
        self.followers(g).into_iter().all(|f| {
            let left_ok = self.left(f).iter().all(|&fl| !self.right(fl).iter().any(|&flr| self.ge_bin(f, flr)));
            let right_ok = self.right(f).iter().all(|&fr| !self.left(fr).iter().any(|&frl| self.ge_bin(frl, f)));
            left_ok && right_ok
        })
    }

    /// Number of classes of dicot trees born by `bound` when two trees are
    /// merged unless some dicot game born by `dist_bound` tells them apart.
    pub fn census_dicot_approx(&self, bound: u32, dist_bound: u32) -> Result<usize> {
        if bound == 0 {
            return Ok(1);
        }
        let contexts = self.space(Filter::Dicot, dist_bound)?;
        let base = self.space(Filter::Dicot, bound - 1)?;
        let table = ContextTable::new(FixedSet::new(self, contexts.members()), &base);
        let picks: Vec<usize> = contexts.members().iter().map(|&x| table.fixed().index_of(x)).collect();
        let mut seen: HashSet<Vec<Outcome>> = HashSet::new();
        table.visit_next_level(base.len(), |_, out| {
            seen.insert(picks.iter().map(|&k| out.at(k)).collect());
        })?;
        Ok(seen.len())
    }
}

impl Status {
    fn to_str(self) -> &'static str {
        match self {
            Status::Proved => "proved",
            Status::Refuted => "refuted",
            Status::Unknown => "unknown",
        }
    }
}
