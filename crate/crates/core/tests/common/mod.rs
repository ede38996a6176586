//! A deliberately naive second implementation of games: explicit trees, a
//! structural sum, a solver memoized on explicit trees, and subset-based enumeration.
//! Shares nothing with the library beyond conversion at the boundary.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use misere::{GameId, Games};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tree {
    pub left: BTreeSet<Tree>,
    pub right: BTreeSet<Tree>,
}

impl Tree {
    pub fn new(left: impl IntoIterator<Item = Tree>, right: impl IntoIterator<Item = Tree>) -> Tree {
        Tree { left: left.into_iter().collect(), right: right.into_iter().collect() }
    }

    pub fn zero() -> Tree {
        Tree::new([], [])
    }

    pub fn star() -> Tree {
        Tree::new([Tree::zero()], [Tree::zero()])
    }

    pub fn birthday(&self) -> u32 {
        self.left.iter().chain(&self.right).map(|t| t.birthday() + 1).max().unwrap_or(0)
    }

    pub fn conj(&self) -> Tree {
        Tree::new(self.right.iter().map(Tree::conj), self.left.iter().map(Tree::conj))
    }

    pub fn sum(&self, other: &Tree) -> Tree {
        let left = self
            .left
            .iter()
            .map(|l| l.sum(other))
            .chain(other.left.iter().map(|l| self.sum(l)));
        let right = self
            .right
            .iter()
            .map(|r| r.sum(other))
            .chain(other.right.iter().map(|r| self.sum(r)));
        Tree::new(left.collect::<Vec<_>>(), right.collect::<Vec<_>>())
    }

    pub fn is_dicot(&self) -> bool {
        (self.left.is_empty() == self.right.is_empty()) && self.left.iter().chain(&self.right).all(Tree::is_dicot)
    }

    pub fn is_binary(&self) -> bool {
        self.left.len() <= 1 && self.right.len() <= 1 && self.left.iter().chain(&self.right).all(Tree::is_binary)
    }

    pub fn is_impartial(&self) -> bool {
        self.left == self.right && self.left.iter().all(Tree::is_impartial)
    }

    pub fn from_id(games: &Games, g: GameId) -> Tree {
        Tree::new(
            games.left(g).iter().map(|&o| Tree::from_id(games, o)),
            games.right(g).iter().map(|&o| Tree::from_id(games, o)),
        )
    }

    pub fn intern(&self, games: &Games) -> GameId {
        let l: Vec<GameId> = self.left.iter().map(|t| t.intern(games)).collect();
        let r: Vec<GameId> = self.right.iter().map(|t| t.intern(games)).collect();
        games.intern(&l, &r)
    }
}

/// Misère (or normal) outcome letter by plain minimax with a tree-keyed memo.
#[derive(Default)]
pub struct Oracle {
    misere: bool,
    memo: HashMap<(Tree, bool), bool>,
}

impl Oracle {
    pub fn misere() -> Self {
        Oracle { misere: true, memo: HashMap::new() }
    }

    pub fn normal() -> Self {
        Oracle { misere: false, memo: HashMap::new() }
    }

    /// Does the player to move (Left if `left`) win?
    fn wins(&mut self, t: &Tree, left: bool) -> bool {
        if let Some(&w) = self.memo.get(&(t.clone(), left)) {
            return w;
        }
        let moves = if left { &t.left } else { &t.right };
        let w = if moves.is_empty() {
            self.misere
        } else {
            moves.clone().iter().any(|m| !self.wins(m, !left))
        };
        self.memo.insert((t.clone(), left), w);
        w
    }

    pub fn outcome(&mut self, t: &Tree) -> char {
        match (self.wins(t, true), self.wins(t, false)) {
            (true, false) => 'L',
            (true, true) => 'N',
            (false, false) => 'P',
            (false, true) => 'R',
        }
    }
}

/// `a ≥ b` on outcome letters.
pub fn geq(a: char, b: char) -> bool {
    a == b || a == 'L' || b == 'R'
}

/// All trees born by `bound` satisfying `keep`, generated from all subsets of
/// the previous day and then filtered. `keep` must be closed under followers.
pub fn trees(bound: u32, keep: fn(&Tree) -> bool) -> Vec<Tree> {
    let mut all: Vec<Tree> = vec![Tree::zero()];
    for _ in 0..bound {
        let n = all.len();
        assert!(n < 20, "naive generation too large");
        let subset = |mask: u32| -> Vec<Tree> { (0..n).filter(|i| mask >> i & 1 == 1).map(|i| all[i].clone()).collect() };
        let mut next = BTreeSet::new();
        for l in 0..1u32 << n {
            for r in 0..1u32 << n {
                let t = Tree::new(subset(l), subset(r));
                if keep(&t) {
                    next.insert(t);
                }
            }
        }
        all = next.into_iter().collect();
    }
    all
}

pub fn any(_: &Tree) -> bool {
    true
}

/// Impartial trees born by `bound`: `{A|A}` for every subset `A` of the
/// previous day.
pub fn impartial_trees(bound: u32) -> Vec<Tree> {
    let mut all: Vec<Tree> = vec![Tree::zero()];
    for _ in 0..bound {
        let n = all.len();
        assert!(n <= 16, "naive generation too large");
        let mut next = BTreeSet::new();
        for mask in 0..1u32 << n {
            let a: Vec<Tree> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| all[i].clone()).collect();
            next.insert(Tree::new(a.clone(), a));
        }
        all = next.into_iter().collect();
    }
    all
}

/// A tree in `space` with `o(g+x) ≱ o(h+x)`, if any.
pub fn naive_distinguisher(oracle: &mut Oracle, g: &Tree, h: &Tree, space: &[Tree]) -> Option<Tree> {
    space.iter().find(|x| !geq(oracle.outcome(&g.sum(x)), oracle.outcome(&h.sum(x)))).cloned()
}
