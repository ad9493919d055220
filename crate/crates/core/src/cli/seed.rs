//! The fixed acceptance matrix behind `verify --seed-suite`.

use rayon::prelude::*;

use super::commands::CaseResult;
use crate::characters::{
    char_bosonic, char_fermionic, verify_char_recurrence, verify_fk_identity, verify_gauss_identity,
    verify_main_theorem, verify_path_recurrence, Verdict,
};
use crate::exactq::{rat, ExactRational};
use crate::minimal_model::ModelParams;
use crate::particle_moves::{bijection_suite, move_lemma_suite};
use crate::path_comb::{
    enumerate_paths_with, is_admissible, min_degree, p3_admissible, MonomialExponents, RiggedPath, Rules,
    DEFAULT_L_CAP,
};

pub(super) const GRID: [(i64, i64); 10] =
    [(3, 4), (3, 5), (4, 5), (3, 7), (5, 7), (3, 8), (4, 7), (5, 8), (4, 9), (3, 10)];
const MOVE_MODELS: [(i64, i64); 4] = [(3, 7), (3, 8), (4, 9), (5, 7)];
const NARROW: [(i64, i64); 6] = [(3, 4), (3, 5), (4, 5), (5, 7), (4, 7), (5, 8)];

fn model(p: i64, pp: i64) -> ModelParams {
    ModelParams::new(p, pp).expect("seed grid holds valid models")
}

fn label(m: &ModelParams, r: i64) -> String {
    format!("({},{}) r={r}", m.p(), m.pp())
}

fn per_r(models: &[(i64, i64)]) -> Vec<(ModelParams, i64)> {
    models
        .iter()
        .flat_map(|&(p, pp)| (1..p).map(move |r| (model(p, pp), r)))
        .collect()
}

fn main_theorem() -> Vec<CaseResult> {
    per_r(&GRID)
        .into_par_iter()
        .map(|(m, r)| {
            let n = m.delta_r1(r) + 24;
            CaseResult::from_verdict("main", label(&m, r), verify_main_theorem(&m, r, &n, DEFAULT_L_CAP))
        })
        .collect()
}

fn bosonic_fermionic() -> Vec<CaseResult> {
    per_r(&GRID)
        .into_par_iter()
        .map(|(m, r)| {
            let n = m.delta_r1(r) + 40;
            let v = char_bosonic(&m, r, 1, &n)
                .and_then(|b| char_fermionic(&m, r, &n).map(|f| (b, f)))
                .and_then(|(b, f)| Verdict::compare(&b, &f, &n));
            CaseResult::from_verdict("bosonic=fermionic", label(&m, r), v)
        })
        .collect()
}

fn recurrences() -> Vec<CaseResult> {
    let wide: Vec<(i64, i64)> = GRID.iter().copied().filter(|&(p, pp)| pp > 2 * p).collect();
    let grid: Vec<(ModelParams, i64, usize)> = per_r(&wide)
        .into_iter()
        .flat_map(|(m, r)| (0..=12).map(move |l| (m.clone(), r, l)))
        .collect();
    grid.into_par_iter()
        .flat_map_iter(|(m, r, l)| {
            let n = m.delta_r1(r) + 24;
            let case = format!("{} L={l}", label(&m, r));
            [
                CaseResult::from_verdict("char-rec", case.clone(), verify_char_recurrence(&m, r, l, &n)),
                CaseResult::from_verdict("path-rec", case, verify_path_recurrence(&m, r, l, &n)),
            ]
        })
        .collect()
}

fn identities() -> Vec<CaseResult> {
    let mut out = Vec::new();
    for l in 0..=3 {
        for mu in -3..=5 {
            out.push(CaseResult::from_verdict("gauss", format!("l={l} mu={mu}"), verify_gauss_identity(l, mu, &rat(20, 1))));
        }
    }
    for k in 1..=3 {
        for mu in -3..=4 {
            out.push(CaseResult::from_verdict("fk", format!("k={k} mu={mu}"), verify_fk_identity(k, mu, &rat(16, 1))));
        }
    }
    out
}

fn particle_suites() -> Vec<CaseResult> {
    let extra = rat(10, 1);
    MOVE_MODELS
        .par_iter()
        .flat_map_iter(|&(p, pp)| {
            let m = model(p, pp);
            let case = format!("({p},{pp})");
            [
                CaseResult::from_report("moves", case.clone(), Ok(move_lemma_suite(&m, 6, &extra))),
                CaseResult::from_report("bijection", case, bijection_suite(&m, 6, &extra)),
            ]
        })
        .collect()
}

/// Lengths `L` whose minimal degree stays within `n`.
fn lengths_within(m: &ModelParams, r: i64, n: &ExactRational) -> Vec<usize> {
    let mut out = Vec::new();
    let mut l = (r - 1) as usize;
    let mut misses = 0;
    while misses < 2 && l <= DEFAULT_L_CAP {
        match min_degree(m, l, r) {
            Some(d) if d <= *n => {
                misses = 0;
                out.push(l);
            }
            _ => misses += 1,
        }
        l += 2;
    }
    out
}

fn window_is_void() -> Vec<CaseResult> {
    per_r(&NARROW)
        .into_par_iter()
        .map(|(m, r)| {
            let n = m.delta_r1(r) + 16;
            let mut bad = None;
            let mut count = 0;
            for l in lengths_within(&m, r, &n) {
                let with = enumerate_paths_with(&m, l, r, &n, Rules { window: true });
                let without = enumerate_paths_with(&m, l, r, &n, Rules { window: false });
                count += with.len();
                if with != without && bad.is_none() {
                    bad = Some(format!("L={l}: {} vs {} paths", with.len(), without.len()));
                }
            }
            let ok = bad.is_none();
            CaseResult::from_bool("window-void", label(&m, r), ok, bad.or(Some(format!("{count} paths"))))
        })
        .collect()
}

/// `n_1 = Delta_{2,1} + sigma_0`, `n_{i+1} = n_i + w(r_{i+1}, r_i, r_{i-1}) + sigma_i`.
fn dictionary(m: &ModelParams, p: &RiggedPath) -> MonomialExponents {
    let mut n: Vec<ExactRational> = Vec::new();
    for i in 0..p.len() {
        let next = if i == 0 {
            m.delta21() + p.sigma(0)
        } else {
            &n[i - 1] + m.w(p.r(i + 1), p.r(i), p.r(i - 1)) + p.sigma(i)
        };
        n.push(next);
    }
    n.reverse();
    MonomialExponents::new(&n, &p.heights_desc()).expect("dictionary keeps the shape")
}

fn p3_translation() -> Vec<CaseResult> {
    let pps = [4, 5, 7, 8];
    pps.par_iter()
        .map(|&pp| {
            let m = model(3, pp);
            let mut checked = 0;
            let mut bad = None;
            for r in 1..3 {
                let n = m.delta_r1(r) + 10;
                for l in 0..=6 {
                    for p in enumerate_paths_with(&m, l, r, &n, Rules { window: false }) {
                        checked += 1;
                        let generic = is_admissible(&m, &p);
                        let direct = p3_admissible(pp, &dictionary(&m, &p));
                        if direct.as_ref().ok() != Some(&generic) && bad.is_none() {
                            bad = Some(format!("{p}: generic {generic}, p=3 form {direct:?}"));
                        }
                    }
                }
            }
            let ok = bad.is_none();
            CaseResult::from_bool("p3", format!("(3,{pp})"), ok, bad.or(Some(format!("{checked} paths"))))
        })
        .collect()
}

pub(super) fn run_all() -> Vec<CaseResult> {
    let mut out = main_theorem();
    out.extend(bosonic_fermionic());
    out.extend(recurrences());
    out.extend(identities());
    out.extend(particle_suites());
    out.extend(window_is_void());
    out.extend(p3_translation());
    out
}
