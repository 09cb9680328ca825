use std::collections::HashSet;

use permgrid::classes::resources;
use permgrid::enumerate::{count_series, filter_all, ClassSpec};
use permgrid::grid::{grid, is_valid_gridding, GriddingMatrix};
use permgrid::perm::{all_permutations, parse_list, Symmetry};
use permgrid::Permutation;

fn m(name: &str) -> GriddingMatrix {
    resources::matrix(name).unwrap()
}

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

/// Tries every pair of cut vectors and checks each cell for monotonicity.
fn naive_griddable(q: &Permutation, mat: &GriddingMatrix) -> bool {
    fn cuts(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for rest in cuts(n, k - 1) {
            let lo = rest.last().copied().unwrap_or(0);
            for c in lo..=n {
                let mut v = rest.clone();
                v.push(c);
                out.push(v);
            }
        }
        out
    }
    let n = q.len();
    let band = |cs: &[usize], i: usize| cs.iter().filter(|&&c| c <= i).count();
    for cc in cuts(n, mat.cols() - 1) {
        for rc in cuts(n, mat.rows() - 1) {
            let cell_of = |i: usize| (band(&cc, i), band(&rc, q.values()[i] as usize - 1));
            let mut all_cells = (0..mat.cols()).flat_map(|c| (0..mat.rows()).map(move |r| (c, r)));
            let ok = all_cells.all(|cell| {
                let pts: Vec<u8> = (0..n)
                    .filter(|&i| cell_of(i) == cell)
                    .map(|i| q.values()[i])
                    .collect();
                let e = mat.entry(cell);
                match e {
                    0 => pts.is_empty(),
                    _ if mat.is_dot(cell) && pts.len() > 1 => false,
                    _ => pts.windows(2).all(|w| (w[1] > w[0]) == (e > 0)),
                }
            });
            if ok {
                return true;
            }
        }
    }
    false
}

#[test]
fn cell_graphs() {
    let g: GriddingMatrix = "1 0 0 / -1 1 0 / 0 -1 -1".parse().unwrap();
    assert_eq!(g.cell_graph().len(), 4);
    assert!(g.is_forest());
    let one: GriddingMatrix = "1".parse().unwrap();
    assert!(one.cell_graph().is_empty());
    let t = m("T");
    assert_eq!(
        t.cells().into_iter().filter(|&c| t.entry(c) != 0).count(),
        3
    );
    assert_eq!(t.cell_graph().len(), 2);
}

#[test]
fn forests() {
    let square: GriddingMatrix = "1 1 / 1 1".parse().unwrap();
    assert!(!square.is_forest());
    for name in ["A", "B", "C", "D", "E", "F", "T", "S", "X"] {
        assert!(m(name).is_forest(), "{name}");
    }
}

#[test]
fn d_is_the_transpose_of_c() {
    assert_eq!(m("D"), m("C").transpose());
}

#[test]
fn gridding_examples() {
    let g: GriddingMatrix = "1 0 0 / -1 1 0 / 0 -1 -1".parse().unwrap();
    let q = Permutation::standardize(&[16, 13, 18, 11, 19, 10, 8, 7, 12, 3, 2, 14, 9, 6, 5, 4, 1]);
    let gr = grid(&q, &g).expect("griddable");
    assert!(is_valid_gridding(&q, &g, &gr));

    assert!(grid(&p("21"), &"1".parse().unwrap()).is_none());
    let e = m("E");
    // E lies inside Av(2143, 4312)
    for q in [p("2143"), p("4312")] {
        assert!(!e.contains(&q));
        assert!(!naive_griddable(&q, &e));
    }
    assert!(e.contains(&p("2413")));
}

#[test]
fn gridding_agrees_with_cut_search() {
    for (name, n_max) in [
        ("E", 5),
        ("B", 5),
        ("T", 6),
        ("wedge", 6),
        ("one_one_one", 6),
    ] {
        let mat = m(name);
        for n in 1..=n_max {
            for q in all_permutations(n) {
                let found = grid(&q, &mat);
                assert_eq!(found.is_some(), naive_griddable(&q, &mat), "{name} {q}");
                if let Some(gr) = found {
                    assert!(is_valid_gridding(&q, &mat, &gr));
                }
            }
        }
    }
}

#[test]
fn wedge_members() {
    let mut members = m("wedge").class_members(3);
    members.sort();
    assert_eq!(members, parse_list("123 132 231 321").unwrap());
    let wedge_class = ClassSpec::basis(parse_list("213 312").unwrap());
    for n in 1..=7 {
        assert_eq!(
            m("wedge").class_members(n).len() as u64,
            count_series(&wedge_class, n).unwrap()[n - 1]
        );
    }
    let one: GriddingMatrix = "1".parse().unwrap();
    assert_eq!(one.class_members(5), vec![Permutation::identity(5)]);
}

#[test]
fn union_of_four_classes_at_seven() {
    let ms: Vec<GriddingMatrix> = ["A", "B", "C", "D"].iter().map(|n| m(n)).collect();
    let union: HashSet<Permutation> = ms.iter().flat_map(|x| x.class_members(7)).collect();
    assert_eq!(union.len(), 1235);
    let av = ClassSpec::basis(parse_list("2143 4321").unwrap());
    assert!(union.iter().all(|q| av.contains(q)));
}

#[test]
fn grid_classes_are_downward_closed() {
    for name in ["T", "F", "wedge_simple"] {
        let mat = m(name);
        let members = filter_all(7, |q| mat.contains(q));
        for q in &members {
            assert!(q.deletions().iter().all(|d| mat.contains(d)), "{name} {q}");
        }
    }
}

#[test]
fn symmetric_matrices_give_symmetric_classes() {
    let mat = m("E");
    for s in Symmetry::ALL {
        let image = mat.apply(s);
        for q in all_permutations(6) {
            assert_eq!(mat.contains(&q), image.contains(&s.apply(&q)), "{s:?} {q}");
        }
    }
}

#[test]
fn text_round_trip() {
    for name in resources::list("matrix").unwrap() {
        let mat = m(&name);
        assert_eq!(
            mat.to_string().parse::<GriddingMatrix>().unwrap(),
            mat,
            "{name}"
        );
    }
}
