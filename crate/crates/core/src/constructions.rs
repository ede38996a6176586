//! Named games and the companion constructions built from them.
//!
//! The adjoint `G°` is the dicot game with `G + G°` a misère P-position. The
//! tilde game `G~ⁱ` follows the same recursion but replaces the terminal `*`
//! by `{Bᵢ|0}`, which keeps it binary dicot whenever `G` is binary.

use std::fmt;

use crate::error::{Error, Result};
use crate::game::{GameId, Games};

/// Largest family index accepted for `n`, `B(i)`, `s(i)` and tilde games.
pub const MAX_INDEX: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Named {
    Zero,
    Star,
    /// The integer `n = {n-1|·}`.
    Int(u32),
    /// `I = {*|{*|0}}`
    I,
    /// `S = {0,*|{0,*|0,*}}`
    S,
    /// `Z = {I|*}`
    Z,
    /// `Ga = {0|*}`
    Ga,
    B(u32),
    /// `s(i)`, the sum of `i` copies of `*`.
    Stars(u32),
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Named::Zero => f.write_str("0"),
            Named::Star => f.write_str("*"),
            Named::Int(n) => write!(f, "{n}"),
            Named::I => f.write_str("I"),
            Named::S => f.write_str("S"),
            Named::Z => f.write_str("Z"),
            Named::Ga => f.write_str("Ga"),
            Named::B(i) => write!(f, "B({i})"),
            Named::Stars(i) => write!(f, "s({i})"),
        }
    }
}

/// The four dicot companions of a game, forcing each misère outcome of the sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Companions {
    pub for_p: GameId,
    pub for_n: GameId,
    pub for_l: GameId,
    pub for_r: GameId,
}

/// `Bᵢ`, its conjugate, and `{conj(Bᵢ)|Bᵢ}`: misère outcomes R, L and N in any
/// sum with a game born by day `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BCompanions {
    pub for_r: GameId,
    pub for_l: GameId,
    pub for_n: GameId,
}

fn check_index(i: u32) -> Result<()> {
    if i > MAX_INDEX {
        return Err(Error::IndexTooLarge { index: i.into(), max: MAX_INDEX });
    }
    Ok(())
}

impl Games {
    pub fn star(&self) -> GameId {
        self.intern(&[Games::ZERO], &[Games::ZERO])
    }

    pub fn integer(&self, n: u32) -> Result<GameId> {
        check_index(n)?;
        Ok((0..n).fold(Games::ZERO, |g, _| self.intern(&[g], &[])))
    }

    pub fn b_game(&self, i: u32) -> Result<GameId> {
        check_index(i)?;
        Ok(self.b_unchecked(i))
    }

    fn b_unchecked(&self, i: u32) -> GameId {
        if let Some(b) = self.memo.b_family.get(&i) {
            return *b;
        }
        let b = if i == 0 {
            self.intern(&[Games::ZERO], &[self.star()])
        } else {
            let prev = self.b_unchecked(i - 1);
            let step = self.intern(&[Games::ZERO], &[prev]);
            let top = self.intern(&[step], &[step]);
            self.intern(&[top], &[step])
        };
        self.memo.b_family.insert(i, b);
        b
    }

    pub fn s_game(&self, i: u32) -> Result<GameId> {
        check_index(i)?;
        Ok((0..i).fold(Games::ZERO, |g, _| self.intern(&[g], &[g])))
    }

    pub fn named(&self, name: Named) -> Result<GameId> {
        let zero = Games::ZERO;
        Ok(match name {
            Named::Zero => zero,
            Named::Star => self.star(),
            Named::Int(n) => self.integer(n)?,
            Named::I => {
                let star = self.star();
                let r = self.intern(&[star], &[zero]);
                self.intern(&[star], &[r])
            }
            Named::S => {
                let star = self.star();
                let star2 = self.intern(&[zero, star], &[zero, star]);
                self.intern(&[zero, star], &[star2])
            }
            Named::Z => {
                let i = self.named(Named::I)?;
                self.intern(&[i], &[self.star()])
            }
            Named::Ga => self.intern(&[zero], &[self.star()]),
            Named::B(i) => self.b_game(i)?,
            Named::Stars(i) => self.s_game(i)?,
        })
    }

    pub fn adjoint(&self, g: GameId) -> GameId {
        if g == Games::ZERO {
            return self.star();
        }
        if let Some(a) = self.memo.adjoints.get(&g) {
            return *a;
        }
        let node = self.node(g);
        let mut left: Vec<GameId> = node.right().iter().map(|&o| self.adjoint(o)).collect();
        let mut right: Vec<GameId> = node.left().iter().map(|&o| self.adjoint(o)).collect();
        if left.is_empty() {
            left.push(Games::ZERO);
        }
        if right.is_empty() {
            right.push(Games::ZERO);
        }
        let a = self.intern_vec(left, right);
        self.memo.adjoints.insert(g, a);
        a
    }

    pub fn tilde(&self, g: GameId, i: u32) -> Result<GameId> {
        check_index(i)?;
        Ok(self.tilde_unchecked(g, i))
    }

    fn tilde_unchecked(&self, g: GameId, i: u32) -> GameId {
        if let Some(t) = self.memo.tildes.get(&(g, i)) {
            return *t;
        }
        let node = self.node(g);
        let mut left: Vec<GameId> = node.right().iter().map(|&o| self.tilde_unchecked(o, i)).collect();
        let mut right: Vec<GameId> = node.left().iter().map(|&o| self.tilde_unchecked(o, i)).collect();
        // Both ends at once means g = 0, giving {B_i|0}.
        if left.is_empty() {
            left.push(self.b_unchecked(i));
        }
        if right.is_empty() {
            right.push(Games::ZERO);
        }
        let t = self.intern_vec(left, right);
        self.memo.tildes.insert((g, i), t);
        t
    }

    pub fn companions(&self, g: GameId) -> Companions {
        let adj = self.adjoint(g);
        let mut adj_left: Vec<GameId> = self.left(g).iter().map(|&o| self.adjoint(o)).collect();
        let mut adj_right: Vec<GameId> = self.right(g).iter().map(|&o| self.adjoint(o)).collect();
        if adj_left.is_empty() {
            adj_left.push(Games::ZERO);
        }
        if adj_right.is_empty() {
            adj_right.push(Games::ZERO);
        }
        let with_adj = |set: &[GameId]| {
            let mut v = set.to_vec();
            v.push(adj);
            v
        };
        Companions {
            for_p: adj,
            for_n: self.intern(&[adj], &[adj]),
            for_l: self.intern_vec(with_adj(&adj_right), adj_left.clone()),
            for_r: self.intern_vec(adj_right, with_adj(&adj_left)),
        }
    }

    pub fn bi_companions(&self, g: GameId, i: u32) -> Result<BCompanions> {
        let birthday = self.birthday(g);
        if i < birthday {
            return Err(Error::IndexBelowBirthday { index: i, birthday });
        }
        let b = self.b_game(i)?;
        let bar = self.conjugate(b);
        Ok(BCompanions { for_r: b, for_l: bar, for_n: self.intern(&[bar], &[b]) })
    }
}
