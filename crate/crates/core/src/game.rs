//! Interned game trees.
//!
//! A game is identified by its Left and Right option sets. [`Games`] hash-conses
//! every node so that two structurally identical trees always receive the same
//! [`GameId`]; option lists are kept sorted and duplicate-free, which makes the
//! set semantics of options exact and turns structural equality into id
//! equality.
//!
//! Ids are handed out in interning order. Since a node can only be interned
//! once its options exist, every option has a smaller id than its parent, so
//! sorting by id is also a topological order of any follower set.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;

use crate::arena::AppendOnly;
use crate::census::{EnumSpace, Filter};
use crate::impartial::CanonicalCache;
use crate::solver::Outcome;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GameId(u32);

impl GameId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

const DICOT: u8 = 1;
const BINARY: u8 = 1 << 1;
const IMPARTIAL: u8 = 1 << 2;

/// A normalized game node: sorted, duplicate-free option lists.
#[derive(Debug)]
pub struct GameNode {
    left: Box<[GameId]>,
    right: Box<[GameId]>,
    birthday: u32,
    flags: u8,
}

impl GameNode {
    pub fn left(&self) -> &[GameId] {
        &self.left
    }

    pub fn right(&self) -> &[GameId] {
        &self.right
    }

    pub fn birthday(&self) -> u32 {
        self.birthday
    }
}

/// Memo tables shared by the solver, constructions and comparison procedures.
/// All of them tolerate concurrent idempotent insertion.
#[derive(Default)]
pub(crate) struct Memo {
    pub(crate) sums: DashMap<(GameId, GameId), GameId>,
    pub(crate) conjugates: DashMap<GameId, GameId>,
    pub(crate) misere: DashMap<GameId, Outcome>,
    pub(crate) normal: DashMap<GameId, Outcome>,
    pub(crate) adjoints: DashMap<GameId, GameId>,
    pub(crate) tildes: DashMap<(GameId, u32), GameId>,
    pub(crate) b_family: DashMap<u32, GameId>,
    pub(crate) ge_binary: DashMap<(GameId, GameId), bool>,
    pub(crate) canonical: CanonicalCache,
    pub(crate) spaces: DashMap<(Filter, u32), Arc<EnumSpace>>,
}

type OptionSets = (Box<[GameId]>, Box<[GameId]>);

/// A session of interned games together with every memo table built on top
/// of them. All methods take `&self`; a `Games` can be shared across threads.
pub struct Games {
    nodes: AppendOnly<GameNode>,
    index: DashMap<OptionSets, GameId>,
    pub(crate) memo: Memo,
}

impl Default for Games {
    fn default() -> Self {
        Self::new()
    }
}

impl Games {
    /// The game `0 = {·|·}`; always the first node of a session.
    pub const ZERO: GameId = GameId(0);

    pub fn new() -> Self {
        let games = Games {
            nodes: AppendOnly::new(),
            index: DashMap::new(),
            memo: Memo::default(),
        };
        let zero = games.intern(&[], &[]);
        debug_assert_eq!(zero, Self::ZERO);
        games
    }

    /// Number of distinct nodes interned so far.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn node(&self, g: GameId) -> &GameNode {
        self.nodes.get(g.index())
    }

    #[inline]
    pub fn left(&self, g: GameId) -> &[GameId] {
        &self.node(g).left
    }

    #[inline]
    pub fn right(&self, g: GameId) -> &[GameId] {
        &self.node(g).right
    }

    pub fn intern(&self, left: &[GameId], right: &[GameId]) -> GameId {
        self.intern_vec(left.to_vec(), right.to_vec())
    }

    pub fn intern_vec(&self, mut left: Vec<GameId>, mut right: Vec<GameId>) -> GameId {
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        let key = (left.into_boxed_slice(), right.into_boxed_slice());
        if let Some(id) = self.index.get(&key) {
            return *id;
        }
        match self.index.entry(key) {
            dashmap::Entry::Occupied(e) => *e.get(),
            dashmap::Entry::Vacant(e) => {
                let (left, right) = e.key().clone();
                let node = self.make_node(left, right);
                let raw = self.nodes.push(node);
                let id = GameId(u32::try_from(raw).expect("more than 2^32 games interned"));
                e.insert(id);
                id
            }
        }
    }

    fn make_node(&self, left: Box<[GameId]>, right: Box<[GameId]>) -> GameNode {
        let mut birthday = 0;
        let mut flags = DICOT | BINARY | IMPARTIAL;
        for &o in left.iter().chain(right.iter()) {
            let n = self.node(o);
            birthday = birthday.max(n.birthday + 1);
            flags &= n.flags;
        }
        if left.is_empty() != right.is_empty() {
            flags &= !DICOT;
        }
        if left.len() > 1 || right.len() > 1 {
            flags &= !BINARY;
        }
        if left != right {
            flags &= !IMPARTIAL;
        }
        GameNode { left, right, birthday, flags }
    }

    pub fn birthday(&self, g: GameId) -> u32 {
        self.node(g).birthday
    }

    pub fn is_dicot(&self, g: GameId) -> bool {
        self.node(g).flags & DICOT != 0
    }

    pub fn is_binary(&self, g: GameId) -> bool {
        self.node(g).flags & BINARY != 0
    }

    pub fn is_impartial(&self, g: GameId) -> bool {
        self.node(g).flags & IMPARTIAL != 0
    }

    pub fn is_left_end(&self, g: GameId) -> bool {
        self.node(g).left.is_empty()
    }

    pub fn is_right_end(&self, g: GameId) -> bool {
        self.node(g).right.is_empty()
    }

    /// All followers of `g`, `g` included, in increasing id order (options
    /// before the games that reach them).
    pub fn followers(&self, g: GameId) -> Vec<GameId> {
        let mut seen = HashSet::new();
        let mut stack = vec![g];
        seen.insert(g);
        while let Some(x) = stack.pop() {
            let n = self.node(x);
            for &o in n.left.iter().chain(n.right.iter()) {
                if seen.insert(o) {
                    stack.push(o);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Disjunctive sum, expanded into an interned tree.
    pub fn sum(&self, g: GameId, h: GameId) -> GameId {
        if g == Self::ZERO {
            return h;
        }
        if h == Self::ZERO {
            return g;
        }
        let key = if g <= h { (g, h) } else { (h, g) };
        if let Some(s) = self.memo.sums.get(&key) {
            return *s;
        }
        let (gn, hn) = (self.node(g), self.node(h));
        let left = gn
            .left
            .iter()
            .map(|&gl| self.sum(gl, h))
            .chain(hn.left.iter().map(|&hl| self.sum(g, hl)))
            .collect();
        let right = gn
            .right
            .iter()
            .map(|&gr| self.sum(gr, h))
            .chain(hn.right.iter().map(|&hr| self.sum(g, hr)))
            .collect();
        let s = self.intern_vec(left, right);
        self.memo.sums.insert(key, s);
        s
    }

    pub fn sum_all(&self, parts: impl IntoIterator<Item = GameId>) -> GameId {
        parts.into_iter().fold(Self::ZERO, |acc, g| self.sum(acc, g))
    }

    /// `n·g`, the sum of `n` copies of `g`.
    pub fn multiple(&self, g: GameId, n: u32) -> GameId {
        (0..n).fold(Self::ZERO, |acc, _| self.sum(acc, g))
    }

    pub fn conjugate(&self, g: GameId) -> GameId {
        if self.is_impartial(g) {
            return g;
        }
        if let Some(c) = self.memo.conjugates.get(&g) {
            return *c;
        }
        let n = self.node(g);
        let left = n.right.iter().map(|&o| self.conjugate(o)).collect();
        let right = n.left.iter().map(|&o| self.conjugate(o)).collect();
        let c = self.intern_vec(left, right);
        self.memo.conjugates.insert(g, c);
        c
    }
}
