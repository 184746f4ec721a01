//! Acceptance battery. Prints one line per criterion and exits nonzero if
//! any criterion fails. Every identity is checked exactly: the residual
//! tolerance is zero throughout.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::Rng;

use liecohom::cochain::{betti_numbers, reduced_betti_numbers};
use liecohom::enveloping::Enveloping;
use liecohom::lie::signed_sum;
use liecohom::random;
use liecohom::report::Verdict;
use liecohom::resolution::{Resolution, Shapiro, SignPolicy};
use liecohom::suite::{alpha_checks, homotopy_checks, hopf_checks, resolution_checks, seeded, shapiro_checks, shapiro_report};
use liecohom::{GModule, LieAlgebra, Rational, RationalMatrix, RelativeComplex, Subalgebra};

/// Residuals must vanish identically.
const RESIDUAL_TOLERANCE: usize = 0;
const SEED: u64 = 0xacce97;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn from(ok: bool, detail: impl Into<String>) -> Self {
        Outcome { pass: ok, detail: detail.into() }
    }
}

/// Reduced-vs-unreduced comparisons collected along the way for criterion 12.
#[derive(Default)]
struct Reduced {
    configs: usize,
    mismatches: Vec<String>,
}

impl Reduced {
    fn record(&mut self, label: &str, h: &Subalgebra, m: &GModule) {
        let top = h.parent().dim() - h.dim();
        let a = betti_numbers(h, m, top).expect("valid configuration").betti();
        let b = reduced_betti_numbers(h, m, top).expect("valid configuration").betti();
        self.configs += 1;
        if a != b {
            self.mismatches.push(format!("{label}: {a:?} vs {b:?}"));
        }
    }
}

fn arc(g: LieAlgebra) -> Arc<LieAlgebra> {
    Arc::new(g)
}

fn absolute_betti(g: &Arc<LieAlgebra>, m: &GModule) -> Vec<usize> {
    betti_numbers(&Subalgebra::zero(g.clone()), m, g.dim()).expect("valid configuration").betti()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn verdicts_ok(vs: &[Verdict], want: &[&str]) -> Result<usize, String> {
    for w in want {
        let v = vs.iter().find(|v| v.check == *w).ok_or_else(|| format!("missing check {w}"))?;
        if v.vacuous {
            return Err(format!("{w} vacuous"));
        }
    }
    let bad: Vec<String> = vs
        .iter()
        .filter(|v| v.report.failures.len() > RESIDUAL_TOLERANCE)
        .map(|v| format!("{} ({})", v.check, v.report.failures[0].location))
        .collect();
    if bad.is_empty() {
        Ok(vs.iter().map(|v| v.report.checked).sum())
    } else {
        Err(bad.join("; "))
    }
}

// Dense oracle: Chevalley–Eilenberg differential for trivial coefficients,
// built straight from structure constants and reduced by plain Gaussian
// elimination on a dense table. Shares nothing with the library's
// cochain code beyond the structure constants.

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out.sort();
    out
}

fn dense_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                let pivot_row = rows[rank].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `(df)(x_J) = Σ_{a<b} (−1)^{a+b} f([x_{j_a}, x_{j_b}] ∧ x_{J∖{a,b}})`
/// as a dense `C(n,k+1) × C(n,k)` table.
fn dense_differential(g: &LieAlgebra, k: usize) -> Vec<Vec<Rational>> {
    let n = g.dim();
    let src = subsets(n, k);
    let dst = subsets(n, k + 1);
    let mut table = vec![vec![Rational::zero(); src.len()]; dst.len()];
    for (r, j) in dst.iter().enumerate() {
        for a in 0..j.len() {
            for b in a + 1..j.len() {
                let bracket = g.basis_bracket(j[a], j[b]);
                let rest: Vec<usize> = j.iter().enumerate().filter(|(i, _)| *i != a && *i != b).map(|(_, x)| *x).collect();
                for (m, c) in bracket.iter().enumerate() {
                    if c.is_zero() || rest.contains(&m) {
                        continue;
                    }
                    let pos = rest.iter().filter(|&&x| x < m).count();
                    let mut key = rest.clone();
                    key.insert(pos, m);
                    let sign = if (a + b + pos) % 2 == 0 { Rational::one() } else { -Rational::one() };
                    let col = src.binary_search(&key).expect("sorted subset");
                    table[r][col] += sign * c;
                }
            }
        }
    }
    table
}

fn dense_betti(g: &LieAlgebra) -> Vec<usize> {
    let n = g.dim();
    let ranks: Vec<usize> = (0..n).map(|k| dense_rank(dense_differential(g, k))).collect();
    (0..=n)
        .map(|k| binomial(n, k) - if k < n { ranks[k] } else { 0 } - if k > 0 { ranks[k - 1] } else { 0 })
        .collect()
}

fn criterion_1(red: &mut Reduced) -> Outcome {
    let mut wrong = Vec::new();
    for n in 1..=6 {
        let g = arc(LieAlgebra::abelian(n));
        let m = GModule::trivial(g.clone(), 1);
        let b = absolute_betti(&g, &m);
        let want: Vec<usize> = (0..=n).map(|k| binomial(n, k)).collect();
        if b != want {
            wrong.push(format!("n={n}: {b:?}"));
        }
        red.record(&format!("abelian:{n}"), &Subalgebra::zero(g.clone()), &m);
    }
    Outcome::from(wrong.is_empty(), if wrong.is_empty() { "binomial rows for n = 1..6".into() } else { wrong.join(", ") })
}

fn criterion_2(red: &mut Reduced) -> Outcome {
    let g = arc(LieAlgebra::heisenberg3());
    let m = GModule::trivial(g.clone(), 1);
    let b = absolute_betti(&g, &m);
    let oracle = dense_betti(&g);
    let dual = (0..=3).all(|k| b[k] == b[3 - k]);
    red.record("heisenberg3 trivial", &Subalgebra::zero(g.clone()), &m);
    let ok = b == [1, 2, 2, 1] && oracle == b && dual;
    Outcome::from(ok, format!("betti {b:?}, dense oracle {oracle:?}, duality {dual}"))
}

fn criterion_3(red: &mut Reduced) -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, g) in [("sl2", LieAlgebra::sl2()), ("so3", LieAlgebra::so3())] {
        let g = arc(g);
        for module in ["natural", "adjoint"] {
            let m = GModule::preset(g.clone(), module).expect("preset module");
            let b = absolute_betti(&g, &m);
            ok &= b[1] == 0 && b[2] == 0;
            notes.push(format!("{name}/{module} {b:?}"));
            red.record(&format!("{name} {module}"), &Subalgebra::zero(g.clone()), &m);
        }
    }
    let g = arc(LieAlgebra::sl2());
    let m = GModule::trivial(g.clone(), 1);
    let b = absolute_betti(&g, &m);
    ok &= b == [1, 0, 0, 1];
    notes.push(format!("sl2/trivial {b:?}"));
    red.record("sl2 trivial", &Subalgebra::zero(g.clone()), &m);
    Outcome::from(ok, notes.join(", "))
}

fn compact(g: &Arc<LieAlgebra>) -> Subalgebra {
    Subalgebra::new(g.clone(), vec![signed_sum(3, &[(1, 1), (2, -1)])]).expect("E - F spans a subalgebra")
}

fn criterion_4(red: &mut Reduced) -> Outcome {
    let g = arc(LieAlgebra::sl2());
    let h = compact(&g);
    let m = GModule::trivial(g.clone(), 1);
    let report = betti_numbers(&h, &m, 2).expect("valid configuration");
    let b = report.betti();
    let cochains: Vec<usize> = report.results.iter().map(|d| d.dim_cochains).collect();
    red.record("sl2 compact trivial", &h, &m);
    // Hand count: h-invariant forms on the plane g/h are the constants and the area form.
    Outcome::from(b == [1, 0, 1] && cochains == [1, 0, 1], format!("betti {b:?}, cochain dims {cochains:?}"))
}

fn presets() -> Vec<(&'static str, Arc<LieAlgebra>)> {
    ["abelian:2", "abelian:3", "heisenberg3", "sl2", "so3", "gl2", "filiform:4"]
        .into_iter()
        .map(|p| (p, arc(LieAlgebra::preset(p).expect("preset"))))
        .collect()
}

fn criterion_5<R: Rng>(rng: &mut R, red: &mut Reduced) -> Outcome {
    let presets = presets();
    let mut failures = Vec::new();
    let mut products = 0;
    for trial in 0..200 {
        let (name, g) = &presets[trial % presets.len()];
        let m = random::module(rng, g, 4);
        let h = Subalgebra::zero(g.clone());
        let cx = RelativeComplex::new(&h, &m).expect("valid configuration");
        let ds = cx.coboundary_matrices().expect("coboundaries");
        for (k, pair) in ds.windows(2).enumerate() {
            products += 1;
            if !pair[1].mul(&pair[0]).is_zero() {
                failures.push(format!("trial {trial} {name} dim E {} degree {k}", m.dim()));
            }
        }
        if trial < presets.len() {
            red.record(&format!("{name} random module"), &h, &m);
        }
    }
    Outcome::from(failures.is_empty(), if failures.is_empty() { format!("{products} products d∘d vanish") } else { failures.join("; ") })
}

fn permutation_matrix(perm: &[usize]) -> RationalMatrix {
    let mut p = RationalMatrix::zeros(perm.len(), perm.len());
    for (k, &old) in perm.iter().enumerate() {
        p.set(old, k, Rational::one());
    }
    p
}

fn criterion_6<R: Rng>(rng: &mut R) -> Outcome {
    let mut failures = Vec::new();
    let mut trials = 0;
    for (name, g) in presets() {
        let m = random::module(rng, &g, 3);
        let base = absolute_betti(&g, &m);
        for t in 0..50 {
            let perm = random::permutation(rng, g.dim());
            let g2 = arc(g.permute_basis(&perm).expect("permuted algebra"));
            let m2 = m.transport(g2.clone(), &permutation_matrix(&perm)).expect("transported module");
            let m2 = m2.change_basis(&random::invertible(rng, m.dim())).expect("invertible");
            let b = absolute_betti(&g2, &m2);
            trials += 1;
            if b != base {
                failures.push(format!("{name} trial {t}: {b:?} vs {base:?}"));
            }
        }
    }
    Outcome::from(failures.is_empty(), if failures.is_empty() { format!("{trials} transformed configurations") } else { failures.join("; ") })
}

fn criterion_7<R: Rng>(rng: &mut R) -> Outcome {
    let want = [
        "counit",
        "coassociativity",
        "antipode-identity",
        "coproduct-multiplicative",
        "antipode-squared",
        "pbw-decomposition",
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, g) in [("heisenberg3", LieAlgebra::heisenberg3()), ("sl2", LieAlgebra::sl2())] {
        let env = Enveloping::new(arc(g), 4);
        let vs = hopf_checks(&env, None, rng, 100);
        match verdicts_ok(&vs, &want) {
            Ok(n) => notes.push(format!("{name}: {n} identities")),
            Err(e) => {
                ok = false;
                notes.push(format!("{name}: {e}"));
            }
        }
    }
    Outcome::from(ok, notes.join(", "))
}

fn configurations() -> Vec<(String, Subalgebra, GModule)> {
    let mut out = Vec::new();
    for (name, g) in [("heisenberg3", LieAlgebra::heisenberg3()), ("sl2", LieAlgebra::sl2())] {
        let g = arc(g);
        out.push((format!("{name}/trivial"), Subalgebra::zero(g.clone()), GModule::trivial(g.clone(), 1)));
        out.push((format!("{name}/adjoint"), Subalgebra::zero(g.clone()), GModule::adjoint(g.clone())));
    }
    out
}

fn run_configurations(checks: impl Fn(&Resolution) -> Vec<Verdict>, want: &[&str]) -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (label, h, m) in configurations() {
        let res = Resolution::new(&h, &m, 3).expect("resolution");
        match verdicts_ok(&checks(&res), want) {
            Ok(n) => notes.push(format!("{label} {n}")),
            Err(e) => {
                ok = false;
                notes.push(format!("{label}: {e}"));
            }
        }
    }
    Outcome::from(ok, notes.join(", "))
}

fn criterion_8() -> Outcome {
    let want = ["bprime-b-identity", "b-bprime-identity", "b-intertwines-actions", "b-intertwines-differentials"];
    run_configurations(|res| resolution_checks(res, &mut seeded(SEED ^ 8), 3, SignPolicy::Signed), &want)
}

fn criterion_9() -> Outcome {
    let want = ["alpha-round-trip", "alpha-intertwines-coboundaries"];
    run_configurations(|res| alpha_checks(res, &mut seeded(SEED ^ 9), 3), &want)
}

fn criterion_10<R: Rng>(rng: &mut R, red: &mut Reduced) -> Outcome {
    let want = ["shapiro-alpha-beta-identity", "shapiro-beta-alpha-identity", "shapiro-alpha-chain-map", "shapiro-beta-chain-map"];
    let heis = arc(LieAlgebra::heisenberg3());
    let gl2 = arc(LieAlgebra::gl2());
    let cases = [
        ("Z in heisenberg3, trivial", Subalgebra::from_indices(heis.clone(), &[2]).unwrap(), GModule::trivial(heis.clone(), 1), vec![1, 1]),
        ("sl2 in gl2, natural", Subalgebra::from_indices(gl2.clone(), &[0, 1, 2]).unwrap(), GModule::natural(gl2.clone()).unwrap(), vec![0, 0, 0, 0]),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (label, h, m, expected) in cases {
        let e_h = m.restrict(&h).expect("restriction");
        let report = shapiro_report(&h, &e_h, h.dim(), 3, rng, 2).expect("shapiro");
        let h_alg = h.as_lie_algebra().clone();
        red.record(label, &Subalgebra::zero(h_alg), &e_h);
        let table_ok = report.h_betti == expected;
        let checks = verdicts_ok(&report.verdicts, &want);
        ok &= table_ok && checks.is_ok();
        notes.push(format!("{label}: H^n(h,E) = {:?}, {}", report.h_betti, checks.map_or_else(|e| e, |n| format!("{n} identities"))));
    }
    let g = arc(LieAlgebra::sl2());
    let h = compact(&g);
    let m = GModule::adjoint(g.clone());
    let sh = Shapiro::new(&h, &m.restrict(&h).unwrap(), 3).expect("shapiro");
    let checks = verdicts_ok(&shapiro_checks(&sh, rng, 2), &want);
    ok &= checks.is_ok();
    notes.push(format!("compact in sl2, adjoint: {}", checks.map_or_else(|e| e, |n| format!("{n} identities"))));
    Outcome::from(ok, notes.join("; "))
}

fn criterion_11<R: Rng>(rng: &mut R) -> Outcome {
    let vs = homotopy_checks(rng, 100, 6, 3);
    match verdicts_ok(&vs, &["homotopy-exact", "homotopy-not-exact"]) {
        Ok(_) => Outcome::from(true, "100 exact complexes contracted, 100 perturbations raise NotExact"),
        Err(e) => Outcome::from(false, e),
    }
}

fn criterion_12(red: &Reduced) -> Outcome {
    Outcome::from(
        red.mismatches.is_empty(),
        if red.mismatches.is_empty() { format!("{} configurations agree", red.configs) } else { red.mismatches.join("; ") },
    )
}

fn main() {
    let mut rng = seeded(SEED);
    let mut red = Reduced::default();
    let budgets = [1, 1, 1, 1, 30, 60, 30, 60, 30, 60, 30, 1];
    let mut failed = 0;
    let mut report = |k: usize, run: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = run();
        let elapsed = t.elapsed();
        let budget = Duration::from_secs(budgets[k - 1]);
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let timing = if elapsed > budget { " over budget" } else { "" };
        println!("criterion {k:>2}: {verdict}  [{:.2?} / {}s{timing}]  {}", elapsed, budget.as_secs(), o.detail);
        if !o.pass {
            failed += 1;
        }
    };
    report(1, &mut || criterion_1(&mut red));
    report(2, &mut || criterion_2(&mut red));
    report(3, &mut || criterion_3(&mut red));
    report(4, &mut || criterion_4(&mut red));
    report(5, &mut || criterion_5(&mut rng, &mut red));
    report(6, &mut || criterion_6(&mut rng));
    report(7, &mut || criterion_7(&mut rng));
    report(8, &mut criterion_8);
    report(9, &mut criterion_9);
    report(10, &mut || criterion_10(&mut rng, &mut red));
    report(11, &mut || criterion_11(&mut rng));
    report(12, &mut || criterion_12(&red));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
