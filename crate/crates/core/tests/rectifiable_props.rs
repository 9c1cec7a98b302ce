use gridwalk::constructor::{construct_from, serpentine, ConstructionRequest};
use gridwalk::grid::{Cell, GridSpec, MoveSet, Symmetry, Walk};
use gridwalk::rectifiable::{concatenate, path_length, polyline_of_walk, total_variation, Chain};
use proptest::prelude::*;

/// A random self-avoiding walk: a greedy extension driven by `picks`.
fn random_walk(moves: MoveSet) -> impl Strategy<Value = Walk> {
    (2usize..=7, prop::collection::vec(any::<u8>(), 0..48)).prop_flat_map(move |(n, picks)| {
        (1..=n, 1..=n).prop_map(move |(r, c)| {
            let g = GridSpec::new(n, moves).unwrap();
            let mut cells = vec![Cell::new(r, c)];
            for &p in &picks {
                let cur = *cells.last().unwrap();
                let free: Vec<Cell> = g
                    .neighbors(cur)
                    .unwrap()
                    .into_iter()
                    .filter(|x| !cells.contains(x))
                    .collect();
                if free.is_empty() {
                    break;
                }
                cells.push(free[p as usize % free.len()]);
            }
            Walk::new(g, cells).unwrap()
        })
    })
}

fn king_walk() -> impl Strategy<Value = Walk> {
    random_walk(MoveSet::King)
}

proptest! {
    #[test]
    fn length_is_rook_steps_plus_root_two_diagonals(w in king_walk()) {
        let diag = w.diagonal_steps();
        let expected = (w.steps() - diag) as f64 + diag as f64 * 2f64.sqrt();
        prop_assert!((path_length(&polyline_of_walk(&w)) - expected).abs() < 1e-12);
    }

    #[test]
    fn length_is_invariant_under_symmetry_and_reversal(w in king_walk()) {
        let base = path_length(&polyline_of_walk(&w));
        prop_assert!((path_length(&polyline_of_walk(&w.reversed())) - base).abs() < 1e-12);
        for s in Symmetry::all() {
            prop_assert!((path_length(&polyline_of_walk(&s.apply_walk(&w))) - base).abs() < 1e-12);
        }
    }

    #[test]
    fn rook_walks_stay_under_the_variation_bound(w in random_walk(MoveSet::Rook)) {
        prop_assert!(total_variation(&polyline_of_walk(&w), w.grid().n()).within_bound);
    }

    #[test]
    fn chain_length_and_visits_add_up(w in king_walk()) {
        let back = w.reversed();
        let s = concatenate(&Chain::new(vec![w.clone(), back.clone(), w.clone()]).unwrap());
        let single = path_length(&polyline_of_walk(&w));
        prop_assert!((s.length - 3.0 * single).abs() < 1e-9);
        prop_assert_eq!(s.visits.total(), 3 * w.cells().len() - 2);
        prop_assert_eq!(s.knots.knots().len(), 3 * w.cells().len() - 2);
    }
}

#[test]
fn diagonal_walks_can_exceed_the_rook_bound() {
    // the side^2 bound relies on unit steps; a king walk can beat it
    let g = GridSpec::king(3).unwrap();
    let cells = [
        (1, 1),
        (1, 2),
        (1, 3),
        (2, 3),
        (3, 2),
        (2, 1),
        (3, 1),
        (2, 2),
        (3, 3),
    ];
    let w = Walk::new(g, cells.iter().map(|&(r, c)| Cell::new(r, c)).collect()).unwrap();
    assert_eq!(w.diagonal_steps(), 4);
    let v = total_variation(&polyline_of_walk(&w), 3);
    assert!((v.variation - (4.0 + 4.0 * 2f64.sqrt())).abs() < 1e-12);
    assert!(!v.within_bound);
}

#[test]
fn serpentine_length_is_cells_minus_one() {
    for n in 2..=8 {
        let w = serpentine(&GridSpec::rook(n).unwrap()).unwrap();
        let v = total_variation(&polyline_of_walk(&w), n);
        assert_eq!(v.variation, (n * n - 1) as f64);
        assert!(v.within_bound);
    }
}

#[test]
fn constructed_walk_lengths_equal_step_counts() {
    let g = GridSpec::rook(7).unwrap();
    for start in g.cells() {
        let w = construct_from(&ConstructionRequest::from_start(g, start, None)).unwrap();
        assert_eq!(path_length(&polyline_of_walk(&w)), w.steps() as f64);
    }
}
