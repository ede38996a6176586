//! Exhaustive enumeration of game trees by birthday.
//!
//! A space holds every distinct normalized tree admitted by a [`Filter`] with
//! birthday at most `bound`. Trees born on day `k+1` take their option sets
//! from the trees born by day `k`, so a space is built level by level. Inside
//! one level, new trees are ordered lexicographically by `(left set, right
//! set)`, where sets of indices are compared by their bitmask value (highest
//! element first). This order does not depend on interning history.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{GameId, Games};

/// Default ceiling on the number of trees a space may materialize.
pub const DEFAULT_CEILING: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Filter {
    All,
    Dicot,
    Binary,
    Impartial,
    BinaryDicot,
    ImpartialBinary,
}

impl Filter {
    pub const ALL: [Filter; 6] = [
        Filter::All,
        Filter::Dicot,
        Filter::Binary,
        Filter::Impartial,
        Filter::BinaryDicot,
        Filter::ImpartialBinary,
    ];

    pub fn admits(self, games: &Games, g: GameId) -> bool {
        match self {
            Filter::All => true,
            Filter::Dicot => games.is_dicot(g),
            Filter::Binary => games.is_binary(g),
            Filter::Impartial => games.is_impartial(g),
            Filter::BinaryDicot => games.is_binary(g) && games.is_dicot(g),
            Filter::ImpartialBinary => games.is_impartial(g) && games.is_binary(g),
        }
    }

    /// At most one option per side.
    pub fn single_options(self) -> bool {
        matches!(self, Filter::Binary | Filter::BinaryDicot | Filter::ImpartialBinary)
    }

    /// Both sides empty or both nonempty.
    pub fn paired_ends(self) -> bool {
        matches!(self, Filter::Dicot | Filter::BinaryDicot)
    }

    /// Left and right option sets coincide.
    pub fn mirrored(self) -> bool {
        matches!(self, Filter::Impartial | Filter::ImpartialBinary)
    }

    /// Is every game admitted by `self` also admitted by `other`?
    pub fn within(self, other: Filter) -> bool {
        use Filter::*;
        match other {
            All => true,
            Dicot => matches!(self, Dicot | Impartial | BinaryDicot | ImpartialBinary),
            Binary => matches!(self, Binary | BinaryDicot | ImpartialBinary),
            Impartial => matches!(self, Impartial | ImpartialBinary),
            BinaryDicot => matches!(self, BinaryDicot | ImpartialBinary),
            ImpartialBinary => self == ImpartialBinary,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Filter::All => "all",
            Filter::Dicot => "dicot",
            Filter::Binary => "binary",
            Filter::Impartial => "impartial",
            Filter::BinaryDicot => "binary-dicot",
            Filter::ImpartialBinary => "impartial-binary",
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Filter::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .or(match s {
                "dicot-binary" => Some(Filter::BinaryDicot),
                "binary-impartial" => Some(Filter::ImpartialBinary),
                _ => None,
            })
            .ok_or_else(|| format!("unknown filter {s:?}"))
    }
}

/// Exact number of trees admitted by `filter` with birthday at most `bound`.
pub fn count(filter: Filter, bound: u32) -> Result<BigUint> {
    const MAX_EXPONENT: u32 = 1 << 24;
    let mut c = BigUint::from(1u32);
    for _ in 0..bound {
        let pow2 = |c: &BigUint| -> Result<BigUint> {
            let e = u32::try_from(c).ok().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| {
                Error::ResourceCeiling {
                    what: format!("count of {filter} trees born by day {bound}"),
                    size: format!("2^{c}"),
                    ceiling: u64::from(MAX_EXPONENT),
                }
            })?;
            Ok(BigUint::from(1u32) << e)
        };
        let one = BigUint::from(1u32);
        c = match filter {
            Filter::All => {
                let p = pow2(&c)?;
                &p * &p
            }
            Filter::Binary => (&c + &one) * (&c + &one),
            Filter::Dicot => {
                let p = pow2(&c)? - &one;
                &p * &p + &one
            }
            Filter::BinaryDicot => &c * &c + &one,
            Filter::Impartial => pow2(&c)?,
            Filter::ImpartialBinary => &c + &one,
        };
    }
    Ok(c)
}

/// Compares index sets by bitmask value: the set with the larger highest
/// element is larger. Both slices must be sorted ascending.
pub fn cmp_subsets(a: &[u32], b: &[u32]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// All option sets a filter allows, drawn from the first `n` members of a
/// space, in bitmask order.
pub(crate) fn option_sets(filter: Filter, n: usize) -> Vec<Vec<u32>> {
    if filter.single_options() {
        std::iter::once(Vec::new()).chain((0..n as u32).map(|i| vec![i])).collect()
    } else {
        assert!(n < 32, "option-set enumeration over {n} elements");
        (0u64..1 << n)
            .map(|mask| (0..n as u32).filter(|&i| mask >> i & 1 == 1).collect())
            .collect()
    }
}

/// A materialized enumeration space.
#[derive(Clone, Debug)]
pub struct EnumSpace {
    filter: Filter,
    bound: u32,
    members: Vec<GameId>,
    left: Vec<Vec<u32>>,
    right: Vec<Vec<u32>>,
    /// `level_starts[k]` is the index of the first member born on day `k`;
    /// one extra entry holds the total length.
    level_starts: Vec<usize>,
}

impl EnumSpace {
    pub fn filter(&self) -> Filter {
        self.filter
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn members(&self) -> &[GameId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, index: usize) -> GameId {
        self.members[index]
    }

    /// Members' Left options as indices into this space.
    pub fn left_indices(&self, index: usize) -> &[u32] {
        &self.left[index]
    }

    pub fn right_indices(&self, index: usize) -> &[u32] {
        &self.right[index]
    }

    /// Number of members born by day `k` (the whole space when `k >= bound`).
    pub fn prefix_len(&self, k: u32) -> usize {
        self.level_starts[(k as usize + 1).min(self.level_starts.len() - 1)]
    }

    pub fn position(&self, g: GameId) -> Option<usize> {
        self.members.iter().position(|&m| m == g)
    }

    /// Interns the game whose options are the given members.
    pub fn game_from(&self, games: &Games, left: &[u32], right: &[u32]) -> GameId {
        let pick = |set: &[u32]| set.iter().map(|&i| self.members[i as usize]).collect();
        games.intern_vec(pick(left), pick(right))
    }
}

impl Games {
    pub fn enumerate(&self, filter: Filter, bound: u32) -> Result<EnumSpace> {
        self.enumerate_with_ceiling(filter, bound, DEFAULT_CEILING)
    }

    pub fn enumerate_with_ceiling(&self, filter: Filter, bound: u32, ceiling: u64) -> Result<EnumSpace> {
        let predicted = count(filter, bound)?;
        if predicted > BigUint::from(ceiling) {
            return Err(Error::ResourceCeiling {
                what: format!("{filter} space born by day {bound}"),
                size: predicted.to_string(),
                ceiling,
            });
        }
        let mut space = EnumSpace {
            filter,
            bound,
            members: vec![Games::ZERO],
            left: vec![Vec::new()],
            right: vec![Vec::new()],
            level_starts: vec![0, 1],
        };
        for day in 1..=bound {
            let n = space.members.len();
            let previous_level = space.level_starts[day as usize - 1];
            let sets = option_sets(filter, n);
            let is_new = |s: &[u32]| s.last().is_some_and(|&i| i as usize >= previous_level);
            let mut push = |l: &[u32], r: &[u32]| {
                if is_new(l) || is_new(r) {
                    let g = space.game_from(self, l, r);
                    space.members.push(g);
                    space.left.push(l.to_vec());
                    space.right.push(r.to_vec());
                }
            };
            if filter.mirrored() {
                for s in &sets {
                    push(s, s);
                }
            } else {
                for l in &sets {
                    for r in &sets {
                        if filter.paired_ends() && l.is_empty() != r.is_empty() {
                            continue;
                        }
                        push(l, r);
                    }
                }
            }
            space.level_starts.push(space.members.len());
        }
        debug_assert_eq!(BigUint::from(space.members.len()), predicted);
        Ok(space)
    }

    /// Uniform random members of the space `(filter, bound)` without
    /// materializing its last level.
    pub fn sample(&self, filter: Filter, bound: u32, n: usize, rng: &mut impl Rng) -> Result<Vec<GameId>> {
        if bound == 0 {
            return Ok(vec![Games::ZERO; n]);
        }
        let base = self.enumerate(filter, bound - 1)?;
        let size = base.len();
        let draw = |rng: &mut dyn rand::RngCore| -> Vec<u32> {
            if filter.single_options() {
                let k = rng.random_range(0..=size);
                if k == 0 { Vec::new() } else { vec![k as u32 - 1] }
            } else {
                (0..size as u32).filter(|_| rng.random_bool(0.5)).collect()
            }
        };
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let l = draw(rng);
            let r = if filter.mirrored() { l.clone() } else { draw(rng) };
            if filter.paired_ends() && l.is_empty() != r.is_empty() {
                continue;
            }
            out.push(base.game_from(self, &l, &r));
        }
        Ok(out)
    }
}

/// A partition of a space into equivalence classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassTable {
    /// Each class lists member indices in enumeration order; the first one is
    /// the representative.
    pub classes: Vec<Vec<usize>>,
}

impl ClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representatives(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().map(|c| c[0])
    }

    pub fn class_of(&self, index: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&index))
    }
}

/// Partitions `space` under `equiv`, which must be an equivalence relation.
/// Each member is compared against the representatives found so far, so
/// transitivity saves the remaining comparisons.
pub fn classify<F>(space: &EnumSpace, equiv: F) -> ClassTable
where
    F: Fn(GameId, GameId) -> bool + Sync,
{
    let members = space.members();
    for &m in members {
        assert!(equiv(m, m), "relation is not reflexive");
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, &g) in members.iter().enumerate() {
        let hit = classes
            .par_iter()
            .position_first(|class| equiv(members[class[0]], g));
        match hit {
            Some(c) => {
                if classes[c].len() == 1 {
                    let r = members[classes[c][0]];
                    assert!(equiv(g, r), "relation is not symmetric");
                }
                classes[c].push(i);
            }
            None => classes.push(vec![i]),
        }
    }
    ClassTable { classes }
}
