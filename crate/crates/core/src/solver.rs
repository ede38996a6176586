//! Exact outcome computation under misère and normal play.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::game::{GameId, Games};

/// Outcome class of a game. Left prefers `L` over `N` and `P`, and both over `R`;
/// `N` and `P` are incomparable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    L,
    N,
    P,
    R,
}

impl Outcome {
    /// Builds the outcome from who wins when each player moves first.
    pub fn from_wins(left_first_wins: bool, right_first_wins: bool) -> Self {
        match (left_first_wins, right_first_wins) {
            (true, false) => Outcome::L,
            (true, true) => Outcome::N,
            (false, false) => Outcome::P,
            (false, true) => Outcome::R,
        }
    }

    /// Does Left win when she moves first?
    pub fn left_first_wins(self) -> bool {
        matches!(self, Outcome::L | Outcome::N)
    }

    /// Does Right win when he moves first?
    pub fn right_first_wins(self) -> bool {
        matches!(self, Outcome::R | Outcome::N)
    }

    /// The partial order on outcomes, from Left's point of view.
    pub fn geq(self, other: Outcome) -> bool {
        self == other || self == Outcome::L || other == Outcome::R
    }

    /// The outcome of the conjugate game.
    pub fn mirror(self) -> Self {
        match self {
            Outcome::L => Outcome::R,
            Outcome::R => Outcome::L,
            o => o,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Outcome::L => "L",
            Outcome::N => "N",
            Outcome::P => "P",
            Outcome::R => "R",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Outcome {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L" => Ok(Outcome::L),
            "N" => Ok(Outcome::N),
            "P" => Ok(Outcome::P),
            "R" => Ok(Outcome::R),
            _ => Err(format!("unknown outcome {s:?}")),
        }
    }
}

pub fn outcome_geq(a: Outcome, b: Outcome) -> bool {
    a.geq(b)
}

/// Play convention: under misère a player unable to move wins, under normal
/// play that player loses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    #[default]
    Misere,
    Normal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mover {
    First,
    Second,
}

impl Games {
    pub fn outcome(&self, g: GameId, conv: Convention) -> Outcome {
        let memo = match conv {
            Convention::Misere => &self.memo.misere,
            Convention::Normal => &self.memo.normal,
        };
        if let Some(o) = memo.get(&g) {
            return *o;
        }
        let stuck_wins = conv == Convention::Misere;
        let node = self.node(g);
        let lf = if node.left().is_empty() {
            stuck_wins
        } else {
            node.left().iter().any(|&gl| !self.outcome(gl, conv).right_first_wins())
        };
        let rf = if node.right().is_empty() {
            stuck_wins
        } else {
            node.right().iter().any(|&gr| !self.outcome(gr, conv).left_first_wins())
        };
        let o = Outcome::from_wins(lf, rf);
        memo.insert(g, o);
        o
    }

    pub fn misere(&self, g: GameId) -> Outcome {
        self.outcome(g, Convention::Misere)
    }

    /// Misère outcome of `g + h`.
    pub fn misere_sum(&self, g: GameId, h: GameId) -> Outcome {
        self.misere(self.sum(g, h))
    }

    pub fn left_wins(&self, g: GameId, mover: Mover, conv: Convention) -> bool {
        let o = self.outcome(g, conv);
        match mover {
            Mover::First => o.left_first_wins(),
            Mover::Second => !o.right_first_wins(),
        }
    }

    /// Plain game-tree search with no transposition table. Exponential; only
    /// useful as a reference for the memoized solver.
    pub fn outcome_unmemoized(&self, g: GameId, conv: Convention) -> Outcome {
        fn first_wins(games: &Games, g: GameId, left: bool, conv: Convention) -> bool {
            let opts = if left { games.left(g) } else { games.right(g) };
            if opts.is_empty() {
                return conv == Convention::Misere;
            }
            opts.iter().any(|&o| !first_wins(games, o, !left, conv))
        }
        Outcome::from_wins(first_wins(self, g, true, conv), first_wins(self, g, false, conv))
    }
}
