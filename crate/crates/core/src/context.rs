//! Outcomes of `G + X` where `G` ranges over a small fixed set of games and
//! `X` over a whole enumeration space.
//!
//! Sums are never expanded. For every member `x` of a materialized space the
//! table stores, for each fixed game `g`, who wins `g + x` moving first. Games
//! one level higher, `X = {A|B}` with `A` and `B` sets of members, are not
//! materialized at all: whether Left wins `g + X` moving first depends on `A`
//! only through whether `A` is empty and which `g` have some `a ∈ A` with
//! Right losing `g + a` moving first. That bit vector is the OR of per-member
//! vectors, so option sets fall into few signature classes, and the next level
//! is scanned one pair of classes at a time.

use std::collections::HashMap;

use crate::census::{cmp_subsets, EnumSpace};
use crate::error::{Error, Result};
use crate::game::{GameId, Games};
use crate::solver::Outcome;

const CLOSURE_CEILING: usize = 1 << 18;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn or(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn minus(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn concat(&self, other: &Bits, split: usize) -> Bits {
        let mut out = Bits::zeros(2 * split);
        for i in 0..split {
            if self.get(i) {
                out.set(i);
            }
            if other.get(i) {
                out.set(split + i);
            }
        }
        out
    }

    fn slice(&self, from: usize, len: usize) -> Bits {
        let mut out = Bits::zeros(len);
        for i in 0..len {
            if self.get(from + i) {
                out.set(i);
            }
        }
        out
    }
}

/// The follower closure of some games, in topological order.
#[derive(Clone, Debug)]
pub struct FixedSet {
    ids: Vec<GameId>,
    position: HashMap<GameId, usize>,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl FixedSet {
    pub fn new(games: &Games, roots: &[GameId]) -> Self {
        let mut ids: Vec<GameId> = roots.iter().flat_map(|&r| games.followers(r)).collect();
        ids.sort_unstable();
        ids.dedup();
        let position: HashMap<GameId, usize> = ids.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let index = |opts: &[GameId]| opts.iter().map(|o| position[o]).collect();
        let left = ids.iter().map(|&g| index(games.left(g))).collect();
        let right = ids.iter().map(|&g| index(games.right(g))).collect();
        FixedSet { ids, position, left, right }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn index_of(&self, g: GameId) -> usize {
        *self.position.get(&g).expect("game outside the fixed set")
    }

    pub fn ids(&self) -> &[GameId] {
        &self.ids
    }

    /// First-mover wins on `g + X` for every fixed `g`, given how `X`'s option
    /// sets interact with the fixed games.
    fn solve(&self, left: &Side, right: &Side) -> Outcomes {
        let n = self.len();
        let mut lf = Bits::zeros(n);
        let mut rf = Bits::zeros(n);
        for g in 0..n {
            let l = (self.left[g].is_empty() && left.empty)
                || self.left[g].iter().any(|&o| !rf.get(o))
                || left.bits.get(g);
            let r = (self.right[g].is_empty() && right.empty)
                || self.right[g].iter().any(|&o| !lf.get(o))
                || right.bits.get(g);
            if l {
                lf.set(g);
            }
            if r {
                rf.set(g);
            }
        }
        Outcomes { lf, rf }
    }
}

struct Side<'a> {
    empty: bool,
    bits: &'a Bits,
}

/// Misère outcomes of `g + X` for every fixed `g` and one context `X`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Outcomes {
    lf: Bits,
    rf: Bits,
}

impl Outcomes {
    pub fn at(&self, fixed_index: usize) -> Outcome {
        Outcome::from_wins(self.lf.get(fixed_index), self.rf.get(fixed_index))
    }
}

/// One class of option sets: all sets sharing a signature.
#[derive(Clone, Debug)]
struct SideClass {
    empty: bool,
    bits: Bits,
    /// The smallest member set in bitmask order.
    rep: Vec<u32>,
    count: u128,
}

/// A class of contexts `{A|B}` that all produce the same outcomes.
#[derive(Clone, Debug)]
pub struct ContextClass {
    /// Smallest option sets (indices into the base space) in the class.
    pub left: Vec<u32>,
    pub right: Vec<u32>,
    /// Number of contexts in the class, saturating.
    pub count: u128,
}

impl ContextClass {
    fn cmp_order(&self, other: &ContextClass) -> std::cmp::Ordering {
        cmp_subsets(&self.left, &other.left).then_with(|| cmp_subsets(&self.right, &other.right))
    }
}

/// First-mover results of `g + x` for every fixed `g` and every member `x` of
/// a materialized space.
pub struct ContextTable<'s> {
    fixed: FixedSet,
    space: &'s EnumSpace,
    rows: Vec<Outcomes>,
}

impl<'s> ContextTable<'s> {
    pub fn new(fixed: FixedSet, space: &'s EnumSpace) -> Self {
        let n = fixed.len();
        let mut rows: Vec<Outcomes> = Vec::with_capacity(space.len());
        for x in 0..space.len() {
            // g + x moving first: a move in g, or a move in x to an earlier row.
            let mut left_bits = Bits::zeros(n);
            let mut right_bits = Bits::zeros(n);
            for &xl in space.left_indices(x) {
                left_bits = left_bits.or(&rows[xl as usize].rf.not_within(n));
            }
            for &xr in space.right_indices(x) {
                right_bits = right_bits.or(&rows[xr as usize].lf.not_within(n));
            }
            let left = Side { empty: space.left_indices(x).is_empty(), bits: &left_bits };
            let right = Side { empty: space.right_indices(x).is_empty(), bits: &right_bits };
            rows.push(fixed.solve(&left, &right));
        }
        ContextTable { fixed, space, rows }
    }

    pub fn fixed(&self) -> &FixedSet {
        &self.fixed
    }

    pub fn space(&self) -> &EnumSpace {
        self.space
    }

    pub fn row(&self, x: usize) -> &Outcomes {
        &self.rows[x]
    }

    /// Visits every class of contexts whose options are drawn from the first
    /// `base_len` members of the space, that is every context admitted by the
    /// space's filter with birthday at most one more than those members.
    pub fn visit_next_level<F>(&self, base_len: usize, mut f: F) -> Result<()>
    where
        F: FnMut(&ContextClass, &Outcomes),
    {
        let n = self.fixed.len();
        let filter = self.space.filter();
        let not_rf: Vec<Bits> = self.rows[..base_len].iter().map(|r| r.rf.not_within(n)).collect();
        let not_lf: Vec<Bits> = self.rows[..base_len].iter().map(|r| r.lf.not_within(n)).collect();
        let single = filter.single_options();

        if filter.mirrored() {
            let joint: Vec<Bits> = not_rf.iter().zip(&not_lf).map(|(a, b)| a.concat(b, n)).collect();
            for class in side_classes(&joint, 2 * n, single)? {
                let lb = class.bits.slice(0, n);
                let rb = class.bits.slice(n, n);
                let out = self.fixed.solve(
                    &Side { empty: class.empty, bits: &lb },
                    &Side { empty: class.empty, bits: &rb },
                );
                let ctx = ContextClass { left: class.rep.clone(), right: class.rep, count: class.count };
                f(&ctx, &out);
            }
            return Ok(());
        }

        let lefts = side_classes(&not_rf, n, single)?;
        let rights = side_classes(&not_lf, n, single)?;
        for a in &lefts {
            for b in &rights {
                if filter.paired_ends() && a.empty != b.empty {
                    continue;
                }
                let out = self.fixed.solve(
                    &Side { empty: a.empty, bits: &a.bits },
                    &Side { empty: b.empty, bits: &b.bits },
                );
                let ctx = ContextClass {
                    left: a.rep.clone(),
                    right: b.rep.clone(),
                    count: a.count.saturating_mul(b.count),
                };
                f(&ctx, &out);
            }
        }
        Ok(())
    }

    /// Scans every context of the space one level above the table, layer by
    /// layer, and returns the first one (in enumeration order) satisfying
    /// `hit`, as a class whose representative is that context.
    pub fn first_match<F>(&self, max_day: u32, hit: F) -> Result<Option<(u32, ContextClass)>>
    where
        F: Fn(&Outcomes) -> bool,
    {
        for day in 0..=max_day {
            let base_len = if day == 0 { 0 } else { self.space.prefix_len(day - 1) };
            let mut best: Option<ContextClass> = None;
            self.visit_next_level(base_len, |ctx, out| {
                if hit(out) && best.as_ref().is_none_or(|b| ctx.cmp_order(b).is_lt()) {
                    best = Some(ctx.clone());
                }
            })?;
            if let Some(b) = best {
                return Ok(Some((day, b)));
            }
        }
        Ok(None)
    }

    pub fn materialize(&self, games: &Games, ctx: &ContextClass) -> GameId {
        self.space.game_from(games, &ctx.left, &ctx.right)
    }
}

impl Bits {
    fn not_within(&self, len: usize) -> Bits {
        let mut out = Bits::zeros(len);
        for i in 0..len {
            if !self.get(i) {
                out.set(i);
            }
        }
        out
    }
}

/// Groups option sets over elements with signature `types[e]` by the OR of
/// their members' signatures. With `single`, only sets of size at most one.
fn side_classes(types: &[Bits], width: usize, single: bool) -> Result<Vec<SideClass>> {
    let mut classes = vec![SideClass { empty: true, bits: Bits::zeros(width), rep: Vec::new(), count: 1 }];
    if single {
        let mut by_type: HashMap<&Bits, usize> = HashMap::new();
        for (e, t) in types.iter().enumerate() {
            match by_type.get(t) {
                Some(&c) => classes[c].count += 1,
                None => {
                    by_type.insert(t, classes.len());
                    classes.push(SideClass { empty: false, bits: t.clone(), rep: vec![e as u32], count: 1 });
                }
            }
        }
        return Ok(classes);
    }

    // Reachable ORs of nonempty subsets, with subset counts.
    let mut counts: HashMap<Bits, u128> = HashMap::new();
    for t in types {
        let mut next = counts.clone();
        let own = next.entry(t.clone()).or_insert(0);
        *own = own.saturating_add(1);
        for (k, c) in &counts {
            let e = next.entry(k.or(t)).or_insert(0);
            *e = e.saturating_add(*c);
        }
        if next.len() > CLOSURE_CEILING {
            return Err(Error::ResourceCeiling {
                what: "context signature closure".into(),
                size: next.len().to_string(),
                ceiling: CLOSURE_CEILING as u64,
            });
        }
        counts = next;
    }
    let mut nonempty: Vec<SideClass> = counts
        .into_iter()
        .map(|(bits, count)| {
            let rep = min_subset(types, &bits);
            SideClass { empty: false, bits, rep, count }
        })
        .collect();
    nonempty.sort_by(|a, b| cmp_subsets(&a.rep, &b.rep));
    classes.extend(nonempty);
    Ok(classes)
}

/// The smallest nonempty set, in bitmask order, whose signatures OR to
/// exactly `target`.
fn min_subset(types: &[Bits], target: &Bits) -> Vec<u32> {
    let allowed: Vec<bool> = types.iter().map(|t| t.is_subset(target)).collect();
    let mut need = target.clone();
    let mut upper = types.len();
    let mut chosen = Vec::new();
    loop {
        if !chosen.is_empty() && need.is_zero() {
            break;
        }
        let mut acc = Bits(vec![0; target.0.len()]);
        let mut pick = None;
        for e in 0..upper {
            if !allowed[e] {
                continue;
            }
            acc = acc.or(&types[e]);
            if need.is_subset(&acc) {
                pick = Some(e);
                break;
            }
        }
        let e = pick.expect("target signature is reachable");
        chosen.push(e as u32);
        need = need.minus(&types[e]);
        upper = e;
    }
    chosen.reverse();
    chosen
}
