mod common;

use common::{from_exact, Level, GRID};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use virapath::characters::{char_bosonic, char_fermionic, char_partial};
use virapath::exactq::{gauss_binom, QSeries};
use virapath::particle_moves::{apply_move, iota, iota_inverse, particle_count, rigging, Dir};
use virapath::path_comb::{char_paths, is_admissible, path_degree, PathJson, RiggedPath};
use virapath::ModelParams;

/// Models with `t > 2`, where the particle picture applies.
const WIDE: [(i64, i64); 4] = [(3, 7), (3, 8), (4, 9), (3, 10)];

fn walk(p: i64, steps: &[bool]) -> Vec<i64> {
    let mut h = vec![1];
    for &up in steps {
        let last = *h.last().unwrap();
        let next = if (up && last < p - 1) || last == 1 { last + 1 } else { last - 1 };
        h.push(next);
    }
    h
}

prop_compose! {
    fn rigged(models: &'static [(i64, i64)], max_len: usize)
        (idx in 0..models.len(), steps in prop::collection::vec(any::<bool>(), 0..=max_len))
        (sigma in prop::collection::vec(0i64..4, steps.len()), idx in Just(idx), steps in Just(steps))
        -> ((i64, i64), RiggedPath)
    {
        let (p, pp) = models[idx];
        let path = RiggedPath::from_indexed(walk(p, &steps), sigma).unwrap();
        ((p, pp), path)
    }
}

fn model(mp: (i64, i64)) -> ModelParams {
    ModelParams::new(mp.0, mp.1).unwrap()
}

fn nonnegative(f: &QSeries) -> bool {
    f.terms().all(|(_, c)| *c >= BigInt::zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn text_and_json_roundtrip((_, path) in rigged(&GRID, 10)) {
        let back: RiggedPath = path.to_string().parse().unwrap();
        prop_assert_eq!(&back, &path);
        let json = serde_json::to_string(&path.to_json()).unwrap();
        let parsed: PathJson = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(RiggedPath::from_json(&parsed).unwrap(), path);
    }

    #[test]
    fn admissibility_and_degree_match_reference((mp, path) in rigged(&GRID, 10)) {
        let m = model(mp);
        let lv = Level::new(mp.0, mp.1);
        let want = lv.admissible(path.heights(), path.riggings(), true);
        prop_assert_eq!(is_admissible(&m, &path), want);
        if want {
            let d = path_degree(&m, &path).unwrap();
            prop_assert_eq!(from_exact(&d), lv.degree(path.heights(), path.riggings()));
        }
    }

    #[test]
    fn moves_invert_and_shift_degree((mp, path) in rigged(&WIDE, 8)) {
        let m = model(mp);
        prop_assume!(is_admissible(&m, &path));
        let d = path_degree(&m, &path).unwrap();
        let count = particle_count(&m, &path).unwrap();
        for j in 1..=count {
            for dir in [Dir::Plus, Dir::Minus] {
                if let Some(next) = apply_move(&m, &path, j, dir).unwrap() {
                    prop_assert!(is_admissible(&m, &next));
                    let back = apply_move(&m, &next, j, dir.opposite()).unwrap();
                    prop_assert_eq!(back.as_ref(), Some(&path));
                    let step = if dir == Dir::Plus { 1 } else { -1 };
                    prop_assert_eq!(path_degree(&m, &next).unwrap(), &d + step);
                }
            }
        }
    }

    #[test]
    fn iota_roundtrips((mp, path) in rigged(&WIDE, 8)) {
        let m = model(mp);
        prop_assume!(is_admissible(&m, &path));
        let (pbar, lam) = iota_inverse(&m, &path).unwrap();
        prop_assert_eq!(&lam, &rigging(&m, &path).unwrap());
        prop_assert_eq!(pbar.len() + 2 * lam.len(), path.len());
        prop_assert_eq!(iota(&m, &pbar, &lam).unwrap(), path);
    }

    #[test]
    fn characters_agree_and_are_positive(idx in 0..GRID.len(), r_seed in 0i64..8, room in 0i64..12) {
        let (p, pp) = GRID[idx];
        let m = model((p, pp));
        let r = 1 + r_seed % (p - 1);
        let n = m.delta_r1(r) + room;
        let fermi = char_fermionic(&m, r, &n).unwrap();
        prop_assert!(nonnegative(&fermi));
        prop_assert!(fermi.eq_up_to(&char_bosonic(&m, r, 1, &n).unwrap(), &n).unwrap());
    }

    #[test]
    fn partial_sums_are_path_characters(idx in 0..GRID.len(), r_seed in 0i64..8, room in 0i64..10) {
        let (p, pp) = GRID[idx];
        let m = model((p, pp));
        let r = 1 + r_seed % (p - 1);
        let n = m.delta_r1(r) + room;
        let mut total = QSeries::zero(virapath::Trunc::at(n.clone()));
        for len in 0..=24 {
            let part = char_partial(&m, r, len, &n).unwrap();
            prop_assert!(part.eq_up_to(&char_paths(&m, len, r, &n), &n).unwrap(), "L = {}", len);
            total = &total + &part;
        }
        prop_assert!(total.eq_up_to(&char_fermionic(&m, r, &n).unwrap(), &n).unwrap());
    }

    #[test]
    fn gaussian_binomials_count_subsets(m in 0i64..14, k in 0i64..14) {
        let want: u64 = if k > m { 0 } else { (0..k).fold(1u64, |acc, i| acc * (m - i) as u64 / (i + 1) as u64) };
        prop_assert_eq!(gauss_binom(m, k).coefficient_sum(), BigInt::from(want));
    }
}

#[test]
fn weights_match_reference_and_v_is_consistent() {
    for (p, pp) in GRID {
        let m = model((p, pp));
        let lv = Level::new(p, pp);
        for b in 1..p {
            for a in [b - 1, b + 1] {
                for c in [b - 1, b + 1] {
                    if [a, c].iter().all(|x| (1..p).contains(x)) {
                        assert_eq!(from_exact(&m.weight_w(a, b, c).unwrap()), lv.w(a, b, c), "({p},{pp}) w({a},{b},{c})");
                    }
                }
            }
        }
        for r in 1..=p - 2 {
            assert_eq!(lv.v(r), lv.v_closed(r), "({p},{pp}) v({r})");
            assert_eq!(m.v_int(r).unwrap(), lv.v(r));
        }
    }
}

#[test]
fn wide_models_have_positive_boundary_v() {
    for (p, pp) in WIDE {
        let lv = Level::new(p, pp);
        assert!(lv.v(1) >= 1 && lv.v(p - 2) >= 1, "({p},{pp})");
        assert!((1..=p - 2).all(|r| lv.v(r) >= 0));
    }
}
