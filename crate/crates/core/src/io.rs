//! JSON formats for matrices, algebras, modules, complexes, enveloping
//! elements, cohomology records and check verdicts. Rationals are strings
//! `"p"` or `"p/q"`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cochain::CohomologyReport;
use crate::enveloping::{Enveloping, UGElement};
use crate::error::IoError;
use crate::lie::{signed_sum, Brackets, LieAlgebra, Subalgebra};
use crate::linalg::{format_rational, parse_rational, zero_vector, Rational, RationalMatrix};
use crate::rep::GModule;
use crate::report::Verdict;
use crate::resolution::ShapiroReport;

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

#[derive(Deserialize)]
struct AlgebraJson {
    dim: usize,
    #[serde(default)]
    basis: Option<Vec<String>>,
    #[serde(default)]
    brackets: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Deserialize)]
struct ModuleJson {
    dim: usize,
    action: Vec<MatrixJson>,
}

#[derive(Deserialize)]
struct ComplexJson {
    spaces: Vec<usize>,
    #[serde(default)]
    maps: Vec<MatrixJson>,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    bound: usize,
    terms: Vec<(Vec<u32>, String)>,
}

pub fn rational_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

fn matrix_from(m: MatrixJson) -> Result<RationalMatrix, IoError> {
    let mut out = RationalMatrix::zeros(m.rows, m.cols);
    for (i, j, s) in m.entries {
        if i >= m.rows || j >= m.cols {
            return Err(IoError::Format(format!("entry ({i},{j}) outside a {}x{} matrix", m.rows, m.cols)));
        }
        out.add_to(i, j, &parse_rational(&s)?);
    }
    Ok(out)
}

fn matrix_to(m: &RationalMatrix) -> MatrixJson {
    MatrixJson { rows: m.rows(), cols: m.cols(), entries: m.entries().map(|(i, j, x)| (i, j, format_rational(x))).collect() }
}

pub fn matrix_json(m: &RationalMatrix) -> Value {
    serde_json::to_value(matrix_to(m)).expect("plain data")
}

pub fn parse_matrix(text: &str) -> Result<RationalMatrix, IoError> {
    matrix_from(serde_json::from_str(text)?)
}

/// Basis names and structure constants, before the Jacobi check.
pub fn parse_algebra_raw(text: &str) -> Result<(Vec<String>, Brackets), IoError> {
    let a: AlgebraJson = serde_json::from_str(text)?;
    let names = match a.basis {
        Some(b) if b.len() != a.dim => {
            return Err(crate::error::LieError::NameCount { names: b.len(), dim: a.dim }.into());
        }
        Some(b) => b,
        None => (1..=a.dim).map(|i| format!("e{i}")).collect(),
    };
    let mut brackets = Brackets::new();
    for (key, sparse) in a.brackets {
        let bad = || IoError::Format(format!("bracket key {key:?} is not of the form \"i,j\""));
        let (i, j) = key.split_once(',').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let j: usize = j.trim().parse().map_err(|_| bad())?;
        let mut v = zero_vector(a.dim);
        for (k, s) in sparse {
            let k: usize = k.trim().parse().map_err(|_| IoError::Format(format!("bracket {key:?} has index {k:?}")))?;
            if k >= a.dim {
                return Err(IoError::Format(format!("bracket {key:?} has index {k} outside dimension {}", a.dim)));
            }
            v[k] += parse_rational(&s)?;
        }
        brackets.insert((i, j), v);
    }
    Ok((names, brackets))
}

pub fn parse_algebra(text: &str) -> Result<LieAlgebra, IoError> {
    let (names, brackets) = parse_algebra_raw(text)?;
    Ok(LieAlgebra::new(names, brackets)?)
}

pub fn algebra_json(g: &LieAlgebra) -> Value {
    let brackets: BTreeMap<String, BTreeMap<String, String>> = g
        .brackets()
        .iter()
        .map(|((i, j), v)| {
            let sparse =
                v.iter().enumerate().filter(|(_, x)| !num_traits::Zero::is_zero(*x)).map(|(k, x)| (k.to_string(), format_rational(x))).collect();
            (format!("{i},{j}"), sparse)
        })
        .collect();
    json!({ "dim": g.dim(), "basis": g.names(), "brackets": brackets })
}

/// Action matrices, before the representation check.
pub fn parse_module_raw(text: &str) -> Result<(usize, Vec<RationalMatrix>), IoError> {
    let m: ModuleJson = serde_json::from_str(text)?;
    let action = m.action.into_iter().map(matrix_from).collect::<Result<Vec<_>, _>>()?;
    Ok((m.dim, action))
}

pub fn parse_module(text: &str, algebra: Arc<LieAlgebra>) -> Result<GModule, IoError> {
    let (dim, action) = parse_module_raw(text)?;
    Ok(GModule::with_dim(algebra, dim, action)?)
}

pub fn module_json(e: &GModule) -> Value {
    json!({ "dim": e.dim(), "action": e.action().iter().map(matrix_json).collect::<Vec<_>>() })
}

/// Spaces and maps, shape-checked but not checked for `d∘d = 0`.
pub fn parse_complex(text: &str) -> Result<crate::complexes::FiniteComplex, IoError> {
    let c: ComplexJson = serde_json::from_str(text)?;
    let maps = c.maps.into_iter().map(matrix_from).collect::<Result<Vec<_>, _>>()?;
    Ok(crate::complexes::FiniteComplex::unchecked(c.spaces, maps)?)
}

pub fn complex_json(c: &crate::complexes::FiniteComplex) -> Value {
    json!({ "spaces": c.spaces(), "maps": c.maps().iter().map(matrix_json).collect::<Vec<_>>() })
}

pub fn parse_element(text: &str, env: &Arc<Enveloping>) -> Result<UGElement, IoError> {
    let e: ElementJson = serde_json::from_str(text)?;
    if e.bound != env.bound() {
        return Err(IoError::Format(format!("element bound {} differs from truncation {}", e.bound, env.bound())));
    }
    let terms = e.terms.into_iter().map(|(m, c)| Ok((m, parse_rational(&c)?))).collect::<Result<Vec<_>, IoError>>()?;
    Ok(env.from_terms(terms)?)
}

pub fn element_json(u: &UGElement) -> Value {
    let terms: Vec<(Vec<u32>, String)> = u.terms().map(|(m, c)| (m.clone(), format_rational(c))).collect();
    serde_json::to_value(ElementJson { bound: u.env().bound(), terms }).expect("plain data")
}

/// One record per degree.
pub fn cohomology_json(report: &CohomologyReport, representatives: bool) -> Value {
    let records: Vec<Value> = report
        .results
        .iter()
        .map(|r| {
            let mut v = json!({
                "degree": r.degree,
                "dim_cochains": r.dim_cochains,
                "dim_cocycles": r.cocycle_dim,
                "dim_coboundaries": r.coboundary_dim,
                "betti": r.betti,
            });
            if representatives {
                v["representatives"] = Value::Array(r.representatives.iter().map(|x| vector_json(x)).collect());
            }
            v
        })
        .collect();
    json!({ "degrees": records, "reduced_equals_unreduced": report.reduced, "warnings": report.warnings })
}

pub fn verdict_json(v: &Verdict) -> Value {
    let failures: Vec<Value> =
        v.report.failures.iter().map(|f| json!({ "location": f.location, "residual": f.residual })).collect();
    json!({
        "check": v.check,
        "window": { "bound": v.bound, "evaluated_up_to": v.window, "points": v.report.checked, "vacuous": v.vacuous },
        "pass": v.passed(),
        "residual_norm_zero": v.passed(),
        "failures": failures,
    })
}

pub fn shapiro_json(r: &ShapiroReport) -> Value {
    json!({
        "h_cohomology": r.h_betti.iter().enumerate().map(|(n, b)| json!({ "degree": n, "betti": b })).collect::<Vec<_>>(),
        "verdicts": r.verdicts.iter().map(verdict_json).collect::<Vec<_>>(),
        "note": r.note,
    })
}

/// Subalgebra descriptions: `zero`, `full`, `compact` (span of `E − F`),
/// `cartan` (span of `H`), `center`, `derived`, a comma-separated index list
/// such as `0,2`, or a JSON list of coordinate vectors.
pub fn parse_subalgebra(text: &str, g: &Arc<LieAlgebra>) -> Result<Subalgebra, IoError> {
    let text = text.trim();
    let named = |name: &str| {
        g.names().iter().position(|n| n == name).ok_or_else(|| IoError::Format(format!("preset needs a basis element named {name}")))
    };
    let h = match text {
        "" | "0" | "zero" => Subalgebra::zero(g.clone()),
        "full" => Subalgebra::full(g.clone()),
        "compact" => {
            let (e, f) = (named("E")?, named("F")?);
            Subalgebra::new(g.clone(), vec![signed_sum(g.dim(), &[(e, 1), (f, -1)])])?
        }
        "cartan" => Subalgebra::from_indices(g.clone(), &[named("H")?])?,
        "center" => Subalgebra::new(g.clone(), g.center().basis().to_vec())?,
        "derived" => Subalgebra::new(g.clone(), g.derived().basis().to_vec())?,
        s if s.starts_with('[') => {
            let rows: Vec<Vec<Value>> = serde_json::from_str(s)?;
            let vectors = rows
                .into_iter()
                .map(|r| {
                    if r.len() != g.dim() {
                        return Err(IoError::Format(format!("vector of length {} in dimension {}", r.len(), g.dim())));
                    }
                    r.iter()
                        .map(|x| match x {
                            Value::String(t) => Ok(parse_rational(t)?),
                            Value::Number(n) => Ok(parse_rational(&n.to_string())?),
                            other => Err(IoError::Format(format!("not a rational: {other}"))),
                        })
                        .collect::<Result<Vec<_>, IoError>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Subalgebra::new(g.clone(), vectors)?
        }
        s => {
            let indices = s
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| IoError::Format(format!("unknown subalgebra {text:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(&i) = indices.iter().find(|&&i| i >= g.dim()) {
                return Err(IoError::Format(format!("basis index {i} outside dimension {}", g.dim())));
            }
            Subalgebra::from_indices(g.clone(), &indices)?
        }
    };
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    #[test]
    fn matrix_round_trip() {
        let mut m = RationalMatrix::zeros(2, 3);
        m.set(0, 2, rat(-1, 2));
        m.set(1, 0, int(4));
        let text = matrix_json(&m).to_string();
        assert_eq!(text, r#"{"cols":3,"entries":[[0,2,"-1/2"],[1,0,"4"]],"rows":2}"#);
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn algebra_round_trip() {
        let g = LieAlgebra::sl2();
        let back = parse_algebra(&algebra_json(&g).to_string()).unwrap();
        assert_eq!(back, g);
        let text = r#"{"dim": 3, "basis": ["X","Y","Z"], "brackets": {"0,1": {"2": "1"}}}"#;
        assert_eq!(parse_algebra(text).unwrap(), LieAlgebra::heisenberg3());
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_algebra("{\n  \"dim\": 3,\n  \"basis\": [\"X\",\n}").unwrap_err();
        match err {
            IoError::Json { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_algebra(r#"{"dim": 2, "brackets": {"0-1": {}}}"#), Err(IoError::Format(_))));
        assert!(matches!(parse_algebra(r#"{"dim": 2, "brackets": {"0,1": {"0": "x"}}}"#), Err(IoError::Linalg(_))));
    }

    #[test]
    fn subalgebra_presets() {
        let sl2 = Arc::new(LieAlgebra::sl2());
        let k = parse_subalgebra("compact", &sl2).unwrap();
        assert_eq!(k.basis(), &[vec![int(0), int(1), int(-1)]]);
        assert_eq!(parse_subalgebra("cartan", &sl2).unwrap().dim(), 1);
        assert_eq!(parse_subalgebra(r#"[["0","1","-1"]]"#, &sl2).unwrap().basis(), k.basis());
        assert!(matches!(parse_subalgebra("1,2", &sl2), Err(IoError::Lie(_))));
        let heis = Arc::new(LieAlgebra::heisenberg3());
        assert_eq!(parse_subalgebra("center", &heis).unwrap().dim(), 1);
        assert_eq!(parse_subalgebra("2", &heis).unwrap().dim(), 1);
        assert!(parse_subalgebra("compact", &heis).is_err());
        assert!(parse_subalgebra("7", &heis).is_err());
    }

    #[test]
    fn element_round_trip() {
        let env = Enveloping::new(Arc::new(LieAlgebra::heisenberg3()), 3);
        let u = env.generator(1).multiply(&env.generator(0)).unwrap();
        let text = element_json(&u).to_string();
        assert_eq!(parse_element(&text, &env).unwrap(), u);
    }
}
