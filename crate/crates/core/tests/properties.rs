//! Algebraic and structural laws, exhaustive where the spaces are small and
//! sampled where they are not.

use std::collections::HashSet;
use std::sync::LazyLock;

use misere::{classify, Convention, Filter, GameId, Games, Named, Outcome, Status, Style, UniverseSpec};
use proptest::collection::vec;
use proptest::prelude::*;

static GAMES: LazyLock<Games> = LazyLock::new(Games::new);

fn members(filter: Filter, bound: u32) -> Vec<GameId> {
    GAMES.space(filter, bound).unwrap().members().to_vec()
}

#[derive(Clone, Debug)]
struct Shape(Vec<Shape>, Vec<Shape>);

/// Arbitrary games born by `depth`, at most `width` options per side.
fn shape(depth: u32, width: usize) -> BoxedStrategy<Shape> {
    if depth == 0 {
        return Just(Shape(vec![], vec![])).boxed();
    }
    let sub = shape(depth - 1, width);
    (vec(sub.clone(), 0..=width), vec(sub, 0..=width)).prop_map(|(l, r)| Shape(l, r)).boxed()
}

fn build(games: &Games, s: &Shape) -> GameId {
    let l: Vec<GameId> = s.0.iter().map(|t| build(games, t)).collect();
    let r: Vec<GameId> = s.1.iter().map(|t| build(games, t)).collect();
    games.intern_vec(l, r)
}

fn copy(from: &Games, to: &Games, g: GameId) -> GameId {
    let l: Vec<GameId> = from.left(g).iter().map(|&o| copy(from, to, o)).collect();
    let r: Vec<GameId> = from.right(g).iter().map(|&o| copy(from, to, o)).collect();
    to.intern_vec(l, r)
}

fn named_games() -> Vec<Named> {
    let mut v = vec![Named::Zero, Named::Star, Named::I, Named::S, Named::Z, Named::Ga];
    v.extend((1..=5).map(Named::Int));
    v.extend((0..=3).map(Named::B));
    v.extend((0..=5).map(Named::Stars));
    v
}

#[test]
fn interning_is_a_bijection_on_enumerated_trees() {
    let other = Games::new();
    for (filter, bound) in [(Filter::All, 2), (Filter::Dicot, 2), (Filter::Binary, 3), (Filter::Impartial, 4)] {
        let ids = members(filter, bound);
        let mut seen = HashSet::new();
        for &g in &ids {
            assert_eq!(GAMES.intern(GAMES.left(g), GAMES.right(g)), g);
            let there = copy(&GAMES, &other, g);
            assert!(seen.insert(there), "{filter}: two trees collapsed");
            assert_eq!(copy(&other, &GAMES, there), g);
        }
    }
}

#[test]
fn sums_add_birthdays_and_commute_with_conjugation() {
    let all = members(Filter::All, 2);
    for &g in &all {
        for &h in &all {
            let s = GAMES.sum(g, h);
            assert_eq!(GAMES.birthday(s), GAMES.birthday(g) + GAMES.birthday(h));
            assert_eq!(GAMES.conjugate(s), GAMES.sum(GAMES.conjugate(g), GAMES.conjugate(h)));
            assert_eq!(s, GAMES.sum(h, g));
        }
    }
}

#[test]
fn impartial_games_are_self_conjugate_and_binary_ones_are_star_sums() {
    for g in members(Filter::Impartial, 4) {
        assert_eq!(GAMES.conjugate(g), g);
        if GAMES.is_binary(g) {
            assert_eq!(g, GAMES.s_game(GAMES.birthday(g)).unwrap());
        }
    }
    for i in 0..=5 {
        let s = GAMES.s_game(i).unwrap();
        assert!(GAMES.is_impartial(s) && GAMES.is_binary(s) && GAMES.is_dicot(s));
    }
    for i in 0..=3 {
        let b = GAMES.b_game(i).unwrap();
        assert!(GAMES.is_binary(b) && GAMES.is_dicot(b));
    }
}

#[test]
fn filters_agree_with_structural_predicates() {
    for g in members(Filter::All, 2) {
        assert_eq!(Filter::Dicot.admits(&GAMES, g), GAMES.is_dicot(g));
        assert_eq!(Filter::Binary.admits(&GAMES, g), GAMES.is_binary(g));
        assert_eq!(Filter::Impartial.admits(&GAMES, g), GAMES.is_impartial(g));
        assert_eq!(Filter::BinaryDicot.admits(&GAMES, g), GAMES.is_binary(g) && GAMES.is_dicot(g));
        assert!(Filter::All.admits(&GAMES, g));
    }
}

#[test]
fn level_growth_laws() {
    let size = |f, b| GAMES.space(f, b).unwrap().len();
    for n in 0..=2 {
        assert_eq!(size(Filter::Binary, n + 1), (size(Filter::Binary, n) + 1).pow(2));
        assert_eq!(size(Filter::BinaryDicot, n + 1), size(Filter::BinaryDicot, n).pow(2) + 1);
        assert_eq!(size(Filter::Impartial, n + 1), 1 << size(Filter::Impartial, n));
    }
}

#[test]
fn spaces_are_closed_under_followers_and_conjugation() {
    let cases = [
        (Filter::All, 2),
        (Filter::Dicot, 2),
        (Filter::Binary, 3),
        (Filter::BinaryDicot, 3),
        (Filter::Impartial, 3),
    ];
    for (filter, bound) in cases {
        let space = GAMES.space(filter, bound).unwrap();
        let ids: HashSet<GameId> = space.members().iter().copied().collect();
        for &g in space.members() {
            assert!(GAMES.birthday(g) <= bound);
            assert!(GAMES.followers(g).iter().all(|f| ids.contains(f)), "{filter} born by {bound}");
            if filter != Filter::Impartial {
                assert!(ids.contains(&GAMES.conjugate(g)));
            } else {
                assert_eq!(GAMES.conjugate(g), g);
            }
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let a = Games::new();
    let b = Games::new();
    let sa: Vec<String> = a.enumerate(Filter::Dicot, 2).unwrap().members().iter().map(|&g| a.braces(g)).collect();
    let sb: Vec<String> = b.enumerate(Filter::Dicot, 2).unwrap().members().iter().map(|&g| b.braces(g)).collect();
    assert_eq!(sa, sb);
}

#[test]
fn printing_round_trips_on_small_and_named_games() {
    for g in members(Filter::All, 2) {
        for style in [Style::Braces, Style::Named] {
            assert_eq!(GAMES.parse_game(&GAMES.print(g, style)), Ok(g));
        }
    }
    for name in named_games() {
        let g = GAMES.named(name).unwrap();
        assert_eq!(GAMES.parse_game(&name.to_string()), Ok(g));
        for style in [Style::Braces, Style::Named] {
            assert_eq!(GAMES.parse_game(&GAMES.print(g, style)), Ok(g));
        }
    }
}

#[test]
fn p_positions_plus_star_are_n() {
    let star = GAMES.star();
    for g in members(Filter::All, 2) {
        if GAMES.misere(g) == Outcome::P {
            assert_eq!(GAMES.misere_sum(g, star), Outcome::N);
        }
    }
    assert_eq!(GAMES.outcome(Games::ZERO, Convention::Normal), Outcome::P);
}

#[test]
fn adjoints_of_binary_games_are_binary_dicot() {
    for g in members(Filter::Binary, 3) {
        let a = GAMES.adjoint(g);
        assert!(GAMES.is_binary(a) && GAMES.is_dicot(a));
        assert_eq!(GAMES.misere_sum(g, a), Outcome::P);
    }
}

#[test]
fn binary_order_is_a_preorder_refining_outcomes() {
    let bd = members(Filter::BinaryDicot, 3);
    let n = bd.len();
    let ge: Vec<Vec<bool>> =
        bd.iter().map(|&g| bd.iter().map(|&h| GAMES.ge_binary_db(g, h).unwrap()).collect()).collect();
    for a in 0..n {
        assert!(ge[a][a]);
        for b in 0..n {
            if ge[a][b] {
                assert!(GAMES.misere(bd[a]).geq(GAMES.misere(bd[b])));
                assert!(GAMES.ge_normal(bd[a], bd[b]));
            }
            for c in 0..n {
                if ge[a][b] && ge[b][c] {
                    assert!(ge[a][c]);
                }
            }
        }
    }
    let classes = classify(&GAMES.space(Filter::BinaryDicot, 3).unwrap(), |x, y| {
        GAMES.ge_binary_db(x, y).unwrap() && GAMES.ge_binary_db(y, x).unwrap()
    });
    let reps: Vec<usize> = classes.representatives().collect();
    for &a in &reps {
        for &b in &reps {
            if a != b {
                assert!(!(ge[a][b] && ge[b][a]), "cycle between class representatives");
            }
        }
    }
}

#[test]
fn exact_zero_test_and_bounded_search_agree() {
    for g in members(Filter::Dicot, 2) {
        let v = GAMES.refute_ge_bounded(g, Games::ZERO, UniverseSpec::new(Filter::Dicot, 3)).unwrap();
        if GAMES.ge_db_zero(g) {
            assert_eq!(v.status, Status::Unknown);
        } else {
            let i = GAMES.birthday(g);
            let t = GAMES.intern(&[GAMES.b_game(i).unwrap()], &[Games::ZERO]);
            assert!(!GAMES.misere_sum(g, t).geq(Outcome::P));
            assert_eq!(GAMES.misere(t), Outcome::P);
            assert_eq!(v.status, Status::Refuted);
        }
    }
}

#[test]
fn impartial_canonical_forms_are_idempotent_and_unique() {
    for g in members(Filter::Impartial, 4) {
        let c = GAMES.canonical_impartial(g).unwrap();
        assert_eq!(GAMES.canonical_impartial(c), Ok(c));
        let mut options: Vec<GameId> = GAMES.left(g).iter().map(|&o| GAMES.canonical_impartial(o).unwrap()).collect();
        options.sort_unstable();
        options.dedup();
        assert!(GAMES.reversal_targets(&options).len() <= 1);
    }
}

#[test]
fn impartial_equivalence_matches_distinguisher_search() {
    let pool = members(Filter::Impartial, 3);
    let u = UniverseSpec::new(Filter::Impartial, 4);
    for &g in &pool {
        for &h in &pool {
            let eq = GAMES.equivalent_impartial(g, h).unwrap();
            let split = GAMES.refute_ge_bounded(g, h, u).unwrap().status == Status::Refuted
                || GAMES.refute_ge_bounded(h, g, u).unwrap().status == Status::Refuted;
            assert_eq!(eq, !split, "{} vs {}", GAMES.braces(g), GAMES.braces(h));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn memoized_solver_matches_plain_search(s in shape(4, 2)) {
        let g = build(&GAMES, &s);
        for conv in [Convention::Misere, Convention::Normal] {
            prop_assert_eq!(GAMES.outcome(g, conv), GAMES.outcome_unmemoized(g, conv));
        }
    }
}

proptest! {
    #[test]
    fn conjugation_mirrors_outcomes(s in shape(3, 3)) {
        let g = build(&GAMES, &s);
        let c = GAMES.conjugate(g);
        prop_assert_eq!(GAMES.conjugate(c), g);
        for conv in [Convention::Misere, Convention::Normal] {
            prop_assert_eq!(GAMES.outcome(c, conv), GAMES.outcome(g, conv).mirror());
        }
    }

    #[test]
    fn printing_round_trips_at_day_three(s in shape(3, 3)) {
        let g = build(&GAMES, &s);
        prop_assert_eq!(GAMES.parse_game(&GAMES.braces(g)), Ok(g));
        prop_assert_eq!(GAMES.parse_game(&GAMES.print(g, Style::Named)), Ok(g));
    }

    #[test]
    fn adjoints_are_dicot_p_companions(s in shape(3, 3)) {
        let g = build(&GAMES, &s);
        let a = GAMES.adjoint(g);
        prop_assert!(GAMES.is_dicot(a));
        prop_assert_eq!(GAMES.misere_sum(g, a), Outcome::P);
    }

    #[test]
    fn binary_order_samples(a in 0usize..676, b in 0usize..676, c in 0usize..676) {
        let bin = GAMES.space(Filter::Binary, 3).unwrap();
        let (g, h, k) = (bin.get(a), bin.get(b), bin.get(c));
        prop_assert!(GAMES.ge_binary_db(g, g).unwrap());
        let gh = GAMES.ge_binary_db(g, h).unwrap();
        if gh {
            prop_assert!(GAMES.misere(g).geq(GAMES.misere(h)));
            prop_assert!(GAMES.ge_normal(g, h));
            if GAMES.ge_binary_db(h, k).unwrap() {
                prop_assert!(GAMES.ge_binary_db(g, k).unwrap());
            }
        }
    }

    #[test]
    fn refutations_carry_valid_witnesses(s in shape(2, 3), t in shape(2, 3)) {
        let (g, h) = (build(&GAMES, &s), build(&GAMES, &t));
        let v = GAMES.refute_ge_bounded(g, h, UniverseSpec::new(Filter::Dicot, 2)).unwrap();
        match v.status {
            Status::Refuted => {
                let x = v.witness.unwrap();
                prop_assert!(GAMES.is_dicot(x) && GAMES.birthday(x) <= 2);
                prop_assert!(!GAMES.misere_sum(g, x).geq(GAMES.misere_sum(h, x)));
            }
            _ => prop_assert!(v.witness.is_none()),
        }
    }

    #[test]
    fn tilde_sums_are_p_positions(a in 0usize..676, extra in 0u32..2) {
        let g = GAMES.space(Filter::Binary, 3).unwrap().get(a);
        let t = GAMES.tilde(g, GAMES.birthday(g) + extra).unwrap();
        prop_assert!(GAMES.is_binary(t) && GAMES.is_dicot(t));
        prop_assert_eq!(GAMES.misere_sum(g, t), Outcome::P);
    }
}
