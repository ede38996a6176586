//! Misère canonical forms of impartial games.
//!
//! Canonicalization is bottom-up. Once the options of `G` are canonical and
//! collected into a set `O`, `G` either is `{O|O}` or collapses onto a game
//! `c` reachable as an option of some member of `O`. A candidate `c` is
//! accepted when every option of `c` is in `O`, every other member of `O` has
//! `c` as an option, and `c` has the same misère outcome as `{O|O}`.

use dashmap::DashMap;

use crate::comparison::UniverseSpec;
use crate::census::Filter;
use crate::error::{Error, Precondition, Result};
use crate::game::{GameId, Games};
use crate::harness::{Recorder, Report};

/// Impartial game → its canonical form.
#[derive(Default)]
pub struct CanonicalCache(DashMap<GameId, GameId>);

impl Games {
    pub fn canonical_impartial(&self, g: GameId) -> Result<GameId> {
        if !self.is_impartial(g) {
            return Err(Error::Precondition(Precondition::NotImpartial { which: "input" }));
        }
        Ok(self.canonical(g))
    }

    fn canonical(&self, g: GameId) -> GameId {
        if let Some(c) = self.memo.canonical.0.get(&g) {
            return *c;
        }
        let mut options: Vec<GameId> = self.left(g).iter().map(|&o| self.canonical(o)).collect();
        options.sort_unstable();
        options.dedup();
        let c = match self.reversal_targets(&options).first() {
            Some(&c) => c,
            None => self.intern(&options, &options),
        };
        self.memo.canonical.0.insert(g, c);
        c
    }

    /// Every candidate accepted for the canonical option set `options`, in
    /// ascending id order. At most one is expected.
    pub fn reversal_targets(&self, options: &[GameId]) -> Vec<GameId> {
        let mut candidates: Vec<GameId> = options.iter().flat_map(|&o| self.left(o).iter().copied()).collect();
        candidates.sort_unstable();
        candidates.dedup();
        if candidates.is_empty() {
            return candidates;
        }
        let whole = self.misere(self.intern(options, options));
        candidates.retain(|&c| {
            let below = self.left(c);
            below.iter().all(|o| options.binary_search(o).is_ok())
                && options
                    .iter()
                    .filter(|o| below.binary_search(o).is_err())
                    .all(|&o| self.left(o).binary_search(&c).is_ok())
                && self.misere(c) == whole
        });
        candidates
    }

    /// Equivalence modulo impartial games. Non-equivalent impartial games
    /// are incomparable, so this decides `≥` as well.
    pub fn equivalent_impartial(&self, g: GameId, h: GameId) -> Result<bool> {
        if !self.is_impartial(g) {
            return Err(Error::Precondition(Precondition::NotImpartial { which: "first" }));
        }
        if !self.is_impartial(h) {
            return Err(Error::Precondition(Precondition::NotImpartial { which: "second" }));
        }
        Ok(self.canonical(g) == self.canonical(h))
    }

    /// Impartially equivalent games born by `pairs_bound` must not be told
    /// apart by any dicot game born by `dist_bound`.
    pub fn verify_i_to_d(&self, pairs_bound: u32, dist_bound: u32) -> Result<Report> {
        let mut rec = Recorder::new("i2d");
        rec.param("pairs_bound", pairs_bound).param("dist_bound", dist_bound);
        self.check_i_to_d(&mut rec, pairs_bound, dist_bound)?;
        Ok(rec.finish())
    }

    pub(crate) fn check_i_to_d(&self, rec: &mut Recorder, pairs_bound: u32, dist_bound: u32) -> Result<()> {
        let space = self.space(Filter::Impartial, pairs_bound)?;
        let members = space.members();
        let u = UniverseSpec::new(Filter::Dicot, dist_bound);
        for (i, &g) in members.iter().enumerate() {
            for &h in &members[i + 1..] {
                if !self.equivalent_impartial(g, h)? {
                    rec.filtered(1);
                    continue;
                }
                rec.checked(1);
                for (a, b) in [(g, h), (h, g)] {
                    if let Some(x) = self.refute_ge_bounded(a, b, u)?.witness {
                        let got = format!("{} vs {}", self.misere_sum(a, x), self.misere_sum(b, x));
                        rec.fail(self, a, Some(b), Some(x), "no dicot distinguisher", &got);
                    }
                }
            }
        }
        Ok(())
    }
}
