//! Canonical representatives of filiform Hom-Lie algebras in dimensions
//! 3 to 7 and the multiplicative families in dimensions 3 to 6, with
//! instantiation, pattern fitting and the table audit.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::expr::Expr;
use crate::algebra::HomAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar};
use crate::filiform::{assemble, PsiCoefficients};
use crate::series::is_filiform;

/// One table entry: `μ₀ + ψ` with a twist-map pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representative {
    pub name: String,
    /// Index among the families listed for the same bracket (multiplicative tables).
    pub variant: Option<usize>,
    pub dim: usize,
    pub psi: Vec<((usize, usize), Expr)>,
    /// Row-major cells; cell `(i, j)` is the `x_i` coefficient of `α(x_j)`.
    pub alpha: Vec<Vec<Expr>>,
    /// Expressions required to be nonzero.
    pub conditions: Vec<Expr>,
    pub multiplicative: bool,
    pub source: String,
}

impl Representative {
    pub fn label(&self) -> String {
        match self.variant {
            Some(v) => format!("{}[{v}]", self.name),
            None => self.name.clone(),
        }
    }

    /// Every named parameter, in sorted order.
    pub fn params(&self) -> Vec<String> {
        let mut vars = BTreeSet::new();
        self.psi.iter().for_each(|(_, e)| e.variables(&mut vars));
        self.alpha.iter().flatten().for_each(|e| e.variables(&mut vars));
        self.conditions.iter().for_each(|e| e.variables(&mut vars));
        vars.into_iter().collect()
    }

    /// Whether the pattern leaves every lower-triangular cell free.
    pub fn alpha_unconstrained(&self) -> bool {
        (0..self.dim).all(|i| (0..=i).all(|j| self.alpha[i][j].as_var() == Some(&rho(j, i))))
    }

    /// The `ψ` support with fixed coefficients, ignoring named ones.
    pub fn psi_support(&self) -> Vec<(usize, usize)> {
        self.psi.iter().map(|(i, _)| *i).collect()
    }
}

fn rho(src: usize, dst: usize) -> String {
    format!("r{src}{dst}")
}

fn any_lower(dim: usize) -> Vec<Vec<Expr>> {
    (0..dim).map(|i| (0..dim).map(|j| if j <= i { Expr::Var(rho(j, i)) } else { Expr::Int(0) }).collect()).collect()
}

/// Builds a pattern from rows; missing cells are zero, "*" is the free cell.
fn pattern(dim: usize, rows: &[&str]) -> Vec<Vec<Expr>> {
    assert_eq!(rows.len(), dim, "pattern needs one row per basis vector");
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let cells: Vec<&str> = if row.trim().is_empty() { Vec::new() } else { row.split(',').collect() };
            assert!(cells.len() <= i + 1, "pattern row {i} is not lower triangular");
            (0..dim)
                .map(|j| match cells.get(j).map(|c| c.trim()) {
                    Some("*") => Expr::Var(rho(j, i)),
                    Some(c) => Expr::parse(c).expect("table expressions parse"),
                    None => Expr::Int(0),
                })
                .collect()
        })
        .collect()
}

fn psi(entries: &[((usize, usize), &str)]) -> Vec<((usize, usize), Expr)> {
    entries.iter().map(|&(i, e)| (i, Expr::parse(e).expect("table expressions parse"))).collect()
}

fn conds(list: &[&str]) -> Vec<Expr> {
    list.iter().map(|e| Expr::parse(e).expect("table expressions parse")).collect()
}

struct Entry<'a> {
    name: &'a str,
    psi: &'a [((usize, usize), &'a str)],
    alpha: Option<&'a [&'a str]>,
    conditions: &'a [&'a str],
}

fn build(dim: usize, multiplicative: bool, source: &str, entries: &[Entry<'_>]) -> Vec<Representative> {
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    entries
        .iter()
        .map(|e| {
            let v = seen.entry(e.name).or_default();
            *v += 1;
            Representative {
                name: e.name.to_string(),
                variant: multiplicative.then_some(*v),
                dim,
                psi: psi(e.psi),
                alpha: e.alpha.map_or_else(|| any_lower(dim), |rows| pattern(dim, rows)),
                conditions: conds(e.conditions),
                multiplicative,
                source: source.to_string(),
            }
        })
        .collect()
}

const P14: ((usize, usize), &str) = ((1, 4), "1");
const P15: ((usize, usize), &str) = ((1, 5), "1");
const P16: ((usize, usize), &str) = ((1, 6), "1");
const P25: ((usize, usize), &str) = ((2, 5), "1");
const P26: ((usize, usize), &str) = ((2, 6), "1");

const TAIL7: [&str; 3] = ["*, *, r34, r34, *", "*, *, r35, r35, *, *", "*, *, r36, r36, *, *, *"];

fn dim7_rows(head: [&'static str; 4]) -> [&'static str; 7] {
    [head[0], head[1], head[2], head[3], TAIL7[0], TAIL7[1], TAIL7[2]]
}

fn classification_table(dim: usize) -> Vec<Representative> {
    let free = |name| Entry { name, psi: &[], alpha: None, conditions: &[] };
    let src = format!("classification table, dimension {dim}");
    match dim {
        3 => build(3, false, &src, &[free("mu_3^1")]),
        4 => build(4, false, &src, &[free("mu_4^1")]),
        5 => build(
            5,
            false,
            &src,
            &[free("mu_5^1"), Entry { name: "mu_5^2", psi: &[P14], alpha: None, conditions: &[] }],
        ),
        6 => {
            let m62 = [
                "*",
                "*, *",
                "*, *, *",
                "*, *, r00 - C11*r01 - C10*r11 - r12, C11*r11",
                "*, *, *, *, *",
                "*, *, *, *, *, *",
            ];
            let m63 = ["*", "*, r00/C10", "*, *, *", "*, *, *, *", "*, *, *, *, *", "*, *, *, *, *, *"];
            build(
                6,
                false,
                &src,
                &[
                    free("mu_6^1"),
                    Entry { name: "mu_6^2", psi: &[P14, P25], alpha: Some(&m62), conditions: &[] },
                    Entry { name: "mu_6^3", psi: &[P14], alpha: Some(&m63), conditions: &["C10"] },
                    Entry { name: "mu_6^4", psi: &[P15], alpha: None, conditions: &[] },
                ],
            )
        }
        7 => {
            let m72 = dim7_rows([
                "C10*r11",
                "*, *",
                "*, *, *",
                "*, *, -(beta*C11 - C20)*r01/beta - r12, (beta*C11 - C20 + C10^2)*r11/beta",
            ]);
            let m73 = dim7_rows(["*", "*, *", "*, *, *", "*, *, *, C11*r11"]);
            let m74 = dim7_rows(["*", "*, *", "*, *, *", "*, *, r00 + C11*r11 - r12, C11*r11"]);
            let m75 = dim7_rows(["C10*r11", "*, *", "*, *, *", "*, *, *, *"]);
            let m77 = dim7_rows(["0", "0, 0", "*, *, *", "*, *, *, *"]);
            build(
                7,
                false,
                &src,
                &[
                    free("mu_7^1"),
                    Entry { name: "mu_7^2", psi: &[P14, ((2, 6), "beta")], alpha: Some(&m72), conditions: &["beta"] },
                    Entry { name: "mu_7^3", psi: &[P26], alpha: Some(&m73), conditions: &[] },
                    Entry { name: "mu_7^4", psi: &[P15, P26], alpha: Some(&m74), conditions: &[] },
                    Entry { name: "mu_7^5", psi: &[P15], alpha: Some(&m75), conditions: &[] },
                    Entry { name: "mu_7^6", psi: &[P16], alpha: None, conditions: &[] },
                    Entry { name: "mu_7^7", psi: &[P14, P16], alpha: Some(&m77), conditions: &[] },
                    Entry { name: "mu_7^8", psi: &[P14], alpha: Some(&m77), conditions: &[] },
                ],
            )
        }
        _ => Vec::new(),
    }
}

fn multiplicative_table(dim: usize) -> Vec<Representative> {
    let src = format!("multiplicative table, dimension {dim}");
    let e = |name, psi, alpha| Entry { name, psi, alpha: Some(alpha), conditions: &[] };
    match dim {
        3 => build(
            3,
            true,
            &src,
            &[e("mu_3^1", &[], &["*", "*, *", "*, *, r00*r11"]), e("mu_3^1", &[], &["0", "*, *", "*, *, 0"])],
        ),
        4 => build(
            4,
            true,
            &src,
            &[
                e("mu_4^1", &[], &["*", "*, r22/r00", "*, *, *", "*, *, r12*r00, r00*r22"]),
                e("mu_4^1", &[], &["0", "*, *", "*, *, 0", "*, *, 0, 0"]),
            ],
        ),
        5 => build(
            5,
            true,
            &src,
            &[
                e(
                    "mu_5^1",
                    &[],
                    &["*", "*, r22/r00", "*, r23/r00, *", "*, *, r23, r00*r22", "*, *, r00*r13, r00*r23, r00^2*r22"],
                ),
                e("mu_5^1", &[], &["0", "*, *", "*, *, 0", "*, *, 0, 0", "*, *, 0, 0, 0"]),
                e("mu_5^2", &[P14], &["0", "*, *", "*, *, 0", "*, *, 0, 0", "*, *, -r11*r02 + r12*r01, 0, 0"]),
                e(
                    "mu_5^2",
                    &[P14],
                    &["*", "*, 0", "*, *, 0", "*, *, r00*r12, 0", "*, *, r01*r12 + r00*r13, r00^2*r12, 0"],
                ),
                e(
                    "mu_5^2",
                    &[P14],
                    &[
                        "*",
                        "*, r00^2",
                        "*, *, r00^3",
                        "*, *, r00*r12, r00^4",
                        "*, *, r01*r12 + r00*r13 - r00^2*r02, r00^2*(r00 + r01 + r12), r00^5",
                    ],
                ),
            ],
        ),
        6 => {
            let c = "(-1 + C10)";
            let m63b: Vec<String> = vec![
                "1/C10".into(),
                "*, 1/C10^2".into(),
                format!(
                    "((1 + C10)*r01^2 + (C10^2 - C10^3)*r24 + C10*r01^2 + C10^2*r01^2 - r13*C10)/{c}, (1 + C10)*r01/({c}*C10), 1/C10^3"
                ),
                format!("*, *, (1 + C10)*r01/({c}*C10^2), 1/C10^4"),
                format!("*, *, *, 2*r01/({c}*C10^2), 1/C10^5"),
                format!(
                    "*, *, (-r03 + r14 + r13*r01*C10^2)/C10, ((1 + C10)*r01^2 + {c}*r24)/({c}*C10), (1 + C10)*r01/({c}*C10^2), 1/C10^6"
                ),
            ];
            let m63b: Vec<&str> = m63b.iter().map(String::as_str).collect();
            let mut out = build(
                6,
                true,
                &src,
                &[
                    e(
                        "mu_6^1",
                        &[],
                        &[
                            "*",
                            "*, r22/r00",
                            "*, r23/r00, *",
                            "*, r24/r00, r23, r00*r2",
                            "*, *, r24, r23*r00, r22*r00^2",
                            "*, *, r14*r00, r24*r00, r23*r00^2, r00^3*r22",
                        ],
                    ),
                    e("mu_6^1", &[], &["0", "*, *", "*, *, 0", "*, r31, 0, 0", "*, *, 0, 0, 0", "*, *, 0, 0, 0, 0"]),
                    e(
                        "mu_6^2",
                        &[P14, P25],
                        &[
                            "0",
                            "*, *",
                            "*, -C10*r11, 0",
                            "*, *, 0, 0",
                            "*, *, -r11*(C10*r01 + r02), 0, 0",
                            "*, *, r13*(C10*r01 + r02), 0, 0, 0",
                        ],
                    ),
                    e(
                        "mu_6^3",
                        &[P14],
                        &["0", "*, 0", "*, *, 0", "*, *, 0, 0", "*, *, r01*r12, 0, 0", "*, *, C10*r01*r13, 0, 0, 0"],
                    ),
                    e("mu_6^3", &[P14], &m63b),
                    e(
                        "mu_6^4",
                        &[P15],
                        &[
                            "*",
                            "*, 0",
                            "*, r23, 0",
                            "*, r24/r00, r00*r12, 0",
                            "*, *, r24, r12*r00^2, 0",
                            "*, *, r12*r01 + r14*r00, r24*r00, r12*r00^3, 0",
                        ],
                    ),
                    e(
                        "mu_6^4",
                        &[P15],
                        &["0", "*, *", "*, *, 0", "*, r31, 0, 0", "*, *, 0, 0, 0", "*, *, -r11*r02 + r01*r12, 0, 0, 0"],
                    ),
                    e(
                        "mu_6^4",
                        &[P15],
                        &[
                            "*",
                            "*, r00^3",
                            "*, *, r00^4",
                            "*, r24/r00, r00*r12, r00^5",
                            "*, *, *, r00^2*r12, r00^6",
                            "*, *, -r00^3*r02 + r14*r00 + r01*r12, r00*(r00^3*r01 + r24), r00^3*r12, r00^7",
                        ],
                    ),
                    e(
                        "mu_6^4",
                        &[P15],
                        &[
                            "*",
                            "*, r00^3",
                            "*, *, r00^4",
                            "*, r24/r00, r00*r12, r00^5",
                            "*, *, 0, r00^2*r12, r00^6",
                            "*, *, -r00^3*r02 + r14*r00 + r01*r12, r00^4*r01, r00^3*r12, r00^7",
                        ],
                    ),
                    e(
                        "mu_6^4",
                        &[P15],
                        &[
                            "*",
                            "*, 0",
                            "*, *, 0",
                            "*, 0, r00*r12, 0",
                            "*, *, 0, r00^2*r12, 0",
                            "*, *, r14*r00 + r01*r12, 0, r00^3*r12, 0",
                        ],
                    ),
                ],
            );
            // The second and third mu_6^2 families involve sqrt(5) and are listed by skipped_entries.
            for r in out.iter_mut().filter(|r| r.name == "mu_6^3" && r.variant == Some(2)) {
                r.conditions = conds(&["C10", "-1 + C10"]);
            }
            out
        }
        _ => Vec::new(),
    }
}

/// The table for a dimension; `multiplicative` selects the multiplicative families.
pub fn registry(dim: usize, multiplicative: bool) -> Result<Vec<Representative>> {
    if !(3..=7).contains(&dim) {
        return Err(Error::Unsupported(format!("tables cover dimensions 3 to 7, not {dim}")));
    }
    if multiplicative {
        if dim == 7 {
            return Err(Error::Unsupported("dimension 7 multiplicative families: not provided by source".into()));
        }
        return Ok(multiplicative_table(dim));
    }
    Ok(classification_table(dim))
}

/// Table entries that cannot be represented over the supported fields.
pub fn skipped_entries(dim: usize, multiplicative: bool) -> Vec<(String, &'static str)> {
    if multiplicative && dim == 6 {
        let why = "entries involve sqrt(5), which is irrational";
        return vec![("mu_6^2[2]".into(), why), ("mu_6^2[3]".into(), why)];
    }
    Vec::new()
}

/// Looks up an entry by label (`mu_6^3` or `mu_6^3[2]`).
pub fn find(label: &str) -> Result<Representative> {
    let dim = label
        .strip_prefix("mu_")
        .and_then(|s| s.split('^').next())
        .and_then(|d| d.parse::<usize>().ok())
        .ok_or_else(|| Error::Input(format!("'{label}' is not a representative name")))?;
    let multiplicative = label.contains('[');
    registry(dim, multiplicative)?
        .into_iter()
        .find(|r| r.label() == label)
        .ok_or_else(|| Error::Input(format!("no representative '{label}'")))
}

pub type Params = BTreeMap<String, Scalar>;

fn eval_alpha(rep: &Representative, field: Field, params: &Params) -> Result<Matrix> {
    let rows = rep
        .alpha
        .iter()
        .map(|row| row.iter().map(|e| e.eval(field, params)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, rows)
}

/// The concrete algebra for an assignment of every named parameter.
pub fn instantiate(rep: &Representative, field: Field, params: &Params) -> Result<HomAlgebra> {
    for p in rep.params() {
        if !params.contains_key(&p) {
            return Err(Error::Input(format!("missing parameter '{p}' for {}", rep.label())));
        }
    }
    for c in &rep.conditions {
        if c.eval(field, params)?.is_zero() {
            return Err(Error::Precondition(format!("side condition {c} != 0 violated for {}", rep.label())));
        }
    }
    let alpha = eval_alpha(rep, field, params)?;
    let mut coeffs = PsiCoefficients::new(field, rep.dim - 1);
    for ((k, r), e) in &rep.psi {
        coeffs.set(*k, *r, e.eval(field, params)?)?;
    }
    assemble(&coeffs, Some(&alpha))
}

/// Binds parameters so that the pattern evaluates to `target`, starting
/// from `known`. Bare-variable cells bind directly; cells with one unknown
/// are solved when linear in it; the rest is searched over small values.
pub fn fit(rep: &Representative, target: &Matrix, known: &Params) -> Option<Params> {
    let field = target.field();
    let mut env = known.clone();
    let n = rep.dim;
    for i in 0..n {
        for j in 0..n {
            if let Some(v) = rep.alpha[i][j].as_var() {
                env.entry(v.to_string()).or_insert_with(|| target.get(i, j).clone());
            }
        }
    }
    let unknowns = |env: &Params, e: &Expr| {
        let mut vars = BTreeSet::new();
        e.variables(&mut vars);
        vars.into_iter().filter(|v| !env.contains_key(v)).collect::<Vec<_>>()
    };
    loop {
        let mut progress = false;
        for i in 0..n {
            for j in 0..n {
                let e = &rep.alpha[i][j];
                let free = unknowns(&env, e);
                if free.len() != 1 {
                    continue;
                }
                if let Some(value) = solve_linear(e, &free[0], target.get(i, j), field, &env) {
                    env.insert(free[0].clone(), value);
                    progress = true;
                }
            }
        }
        if !progress {
            break;
        }
    }
    let mut rest: BTreeSet<String> = BTreeSet::new();
    for row in &rep.alpha {
        for e in row {
            rest.extend(unknowns(&env, e));
        }
    }
    for e in rep.psi.iter().map(|(_, e)| e).chain(rep.conditions.iter()) {
        rest.extend(unknowns(&env, e));
    }
    let rest: Vec<String> = rest.into_iter().collect();
    if rest.len() > 4 {
        return None;
    }
    let trial = [0i64, 1, -1, 2];
    let total = trial.len().pow(rest.len() as u32);
    (0..total).find_map(|mut code| {
        let mut cand = env.clone();
        for v in &rest {
            cand.insert(v.clone(), field.int(trial[code % trial.len()]));
            code /= trial.len();
        }
        let fits = eval_alpha(rep, field, &cand).is_ok_and(|m| &m == target)
            && rep.conditions.iter().all(|c| c.eval(field, &cand).is_ok_and(|v| !v.is_zero()));
        fits.then_some(cand)
    })
}

fn solve_linear(e: &Expr, var: &str, want: &Scalar, field: Field, env: &Params) -> Option<Scalar> {
    let at = |t: i64| {
        let mut m = env.clone();
        m.insert(var.to_string(), field.int(t));
        e.eval(field, &m).ok()
    };
    let points: Vec<(i64, Scalar)> = [1i64, 2, 3, 5].iter().filter_map(|&t| at(t).map(|v| (t, v))).collect();
    if points.len() < 3 {
        return None;
    }
    let (t0, v0) = &points[0];
    let (t1, v1) = &points[1];
    let slope = (v1 - v0) * field.int(t1 - t0).inv()?;
    let linear = points[2..].iter().all(|(t, v)| v == &(v0 + &(&slope * &field.int(t - t0))));
    if !linear || slope.is_zero() {
        return None;
    }
    let value = field.int(*t0) + (want - v0) * slope.inv()?;
    let mut m = env.clone();
    m.insert(var.to_string(), value.clone());
    (e.eval(field, &m).ok().as_ref() == Some(want)).then_some(value)
}

/// Check outcomes for one instantiated entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub hom_jacobi: bool,
    pub filiform: bool,
    pub multiplicative: Option<bool>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.hom_jacobi && self.filiform && self.multiplicative != Some(false)
    }
}

pub fn verify_representative(rep: &Representative, field: Field, params: &Params) -> Result<Verification> {
    let g = instantiate(rep, field, params)?;
    Ok(Verification {
        hom_jacobi: g.check_hom_jacobi(),
        filiform: is_filiform(&g),
        multiplicative: rep.multiplicative.then(|| g.check_multiplicative()),
    })
}

/// Parameters giving the identity twist map, when the pattern admits one.
pub fn identity_params(rep: &Representative, field: Field) -> Option<Params> {
    fit(rep, &Matrix::identity(field, rep.dim), &Params::new())
}

/// A failed check with the parameters that reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub check: String,
    pub params: Params,
}

/// Audit outcome for one table entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub label: String,
    pub source: String,
    pub samples: usize,
    pub rejected_samples: usize,
    pub hom_jacobi_pass: usize,
    pub filiform_pass: usize,
    pub multiplicative_pass: Option<usize>,
    /// Outcome at the identity twist map; `None` when the pattern excludes it.
    pub identity: Option<Verification>,
    pub findings: Vec<Finding>,
}

impl AuditRow {
    pub fn status(&self) -> &'static str {
        let all = |c: usize| c == self.samples;
        let ok = all(self.hom_jacobi_pass)
            && all(self.filiform_pass)
            && self.multiplicative_pass.is_none_or(all)
            && self.identity.as_ref().is_none_or(Verification::passed);
        if ok {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

/// Samples every named parameter (nonzero) until the side conditions hold.
pub fn sample_params(rep: &Representative, field: Field, rng: &mut ChaCha8Rng) -> Option<(Params, HomAlgebra)> {
    for _ in 0..50 {
        let params: Params = rep.params().into_iter().map(|p| (p, field.sample_nonzero(rng, 4))).collect();
        if let Ok(g) = instantiate(rep, field, &params) {
            return Some((params, g));
        }
    }
    None
}

/// Runs the checks on `samples` random parameter points per entry.
pub fn audit(dim: usize, multiplicative: bool, samples: usize, seed: u64, field: Field) -> Result<Vec<AuditRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for rep in registry(dim, multiplicative)? {
        let mut row = AuditRow {
            label: rep.label(),
            source: rep.source.clone(),
            samples: 0,
            rejected_samples: 0,
            hom_jacobi_pass: 0,
            filiform_pass: 0,
            multiplicative_pass: rep.multiplicative.then_some(0),
            identity: identity_params(&rep, field).and_then(|p| verify_representative(&rep, field, &p).ok()),
            findings: Vec::new(),
        };
        for _ in 0..samples {
            let Some((params, g)) = sample_params(&rep, field, &mut rng) else {
                row.rejected_samples += 1;
                continue;
            };
            row.samples += 1;
            let checks = [
                ("hom_jacobi", Some(g.check_hom_jacobi())),
                ("filiform", Some(is_filiform(&g))),
                ("multiplicative", rep.multiplicative.then(|| g.check_multiplicative())),
            ];
            for (name, outcome) in checks {
                match (name, outcome) {
                    (_, None) => {}
                    ("hom_jacobi", Some(true)) => row.hom_jacobi_pass += 1,
                    ("filiform", Some(true)) => row.filiform_pass += 1,
                    (_, Some(true)) => *row.multiplicative_pass.get_or_insert(0) += 1,
                    (_, Some(false)) => {
                        if !row.findings.iter().any(|f| f.check == name) {
                            row.findings.push(Finding { check: name.to_string(), params: params.clone() });
                        }
                    }
                }
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn counts() {
        let counts: Vec<usize> = (3..=7).map(|d| registry(d, false).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 8]);
        assert!(matches!(registry(7, true), Err(Error::Unsupported(m)) if m.contains("not provided by source")));
        assert!(registry(6, false).unwrap()[3].alpha_unconstrained());
        assert_eq!(registry(7, false).unwrap()[5].name, "mu_7^6");
        for d in 3..=6 {
            for r in registry(d, true).unwrap() {
                assert_eq!(r.alpha.len(), d);
                for i in 0..d {
                    assert!((i + 1..d).all(|j| r.alpha[i][j].is_zero_literal()), "{}", r.label());
                }
            }
        }
    }

    #[test]
    fn identity_instances() {
        let m52 = find("mu_5^2").unwrap();
        let p = identity_params(&m52, Q).unwrap();
        let v = verify_representative(&m52, Q, &p).unwrap();
        assert!(v.passed());
        let m62 = find("mu_6^2").unwrap();
        let p = identity_params(&m62, Q).unwrap();
        assert_eq!((p["C10"].clone(), p["C11"].clone()), (Q.one(), Q.one()));
        assert!(identity_params(&find("mu_7^7").unwrap(), Q).is_none());
    }

    #[test]
    fn beta_must_be_nonzero() {
        let m72 = find("mu_7^2").unwrap();
        let mut p = identity_params(&m72, Q).unwrap();
        assert!(instantiate(&m72, Q, &p).is_ok());
        p.insert("beta".into(), Q.zero());
        assert!(matches!(instantiate(&m72, Q, &p), Err(Error::Precondition(_))));
        p.remove("beta");
        assert!(matches!(instantiate(&m72, Q, &p), Err(Error::Input(_))));
    }

    #[test]
    fn dim3_multiplicative_example() {
        let rep = find("mu_3^1[1]").unwrap();
        let p: Params = [("r00", 2), ("r11", 3), ("r01", 1), ("r02", 1), ("r12", 1)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), Q.int(v)))
            .collect();
        let g = instantiate(&rep, Q, &p).unwrap();
        assert!(g.check_multiplicative());
        assert_eq!(g.alpha().get(2, 2), &Q.int(6));
    }
}
