//! Exhaustive isomorphism search over small prime fields.

use crate::algebra::HomAlgebra;
use crate::basis_change::has_adapted_relations;
use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Scalar};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Structure constants as residues.
struct Table {
    p: u64,
    d: usize,
    /// `br[(i * d + j) * d + k]`: `x_k` coefficient of `[x_i, x_j]`.
    br: Vec<u64>,
    /// Row-major twist matrix.
    alpha: Vec<u64>,
}

fn residue(s: &Scalar) -> u64 {
    match s {
        Scalar::Fp { value, .. } => *value as u64,
        Scalar::Q(_) => unreachable!("tables are built over prime fields only"),
    }
}

impl Table {
    fn new(g: &HomAlgebra) -> Result<Table> {
        let Field::Prime(p) = g.field() else {
            return Err(Error::Unsupported("isomorphism search needs a prime field".into()));
        };
        let d = g.dim();
        let mut br = vec![0; d * d * d];
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                let v = if i < j { g.bracket_basis(i, j).to_vec() } else { g.br(&g.unit(i), &g.unit(j)) };
                for k in 0..d {
                    br[(i * d + j) * d + k] = residue(&v[k]);
                }
            }
        }
        let alpha =
            (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| residue(g.alpha().get(i, j))).collect();
        Ok(Table { p: p as u64, d, br, alpha })
    }

    fn bracket(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let (d, p) = (self.d, self.p);
        let mut out = vec![0u64; d];
        for i in 0..d {
            if u[i] == 0 {
                continue;
            }
            for j in 0..d {
                if v[j] == 0 || i == j {
                    continue;
                }
                let c = u[i] * v[j] % p;
                let base = (i * d + j) * d;
                for k in 0..d {
                    out[k] = (out[k] + c * self.br[base + k]) % p;
                }
            }
        }
        out
    }
}

/// `f` given by columns; checks `f[x_i, x_j]_2 = [f x_i, f x_j]_1` for the
/// pairs and twist columns whose indices are all below `upto`.
fn partial_check(t1: &Table, t2: &Table, cols: &[Vec<u64>], upto: usize, only_new: bool) -> bool {
    let (d, p) = (t1.d, t1.p);
    let image = |coeffs: &[u64]| {
        let mut out = vec![0u64; d];
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                for r in 0..d {
                    out[r] = (out[r] + c * cols[k][r]) % p;
                }
            }
        }
        out
    };
    let ready = |coeffs: &[u64]| coeffs.iter().enumerate().all(|(k, &c)| c == 0 || k < upto);
    let lo = if only_new { upto - 1 } else { 0 };
    for j in lo..upto {
        for i in 0..j {
            let rhs = &t2.br[(i * d + j) * d..(i * d + j + 1) * d];
            if ready(rhs) && t1.bracket(&cols[i], &cols[j]) != image(rhs) {
                return false;
            }
        }
        let a2col: Vec<u64> = (0..d).map(|r| t2.alpha[r * d + j]).collect();
        if ready(&a2col) {
            let lhs: Vec<u64> =
                (0..d).map(|r| (0..d).map(|k| t1.alpha[r * d + k] * cols[j][k] % p).sum::<u64>() % p).collect();
            if lhs != image(&a2col) {
                return false;
            }
        }
    }
    true
}

fn rank_mod(cols: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = cols.to_vec();
    let (rows, n) = (m.len(), m.first().map_or(0, Vec::len));
    let mut rank = 0;
    for c in 0..n {
        let Some(piv) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % p;
                for k in 0..n {
                    m[r][k] = (m[r][k] + p * p - f * m[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Search outcome; the witness maps the second algebra onto the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoResult {
    pub isomorphic: bool,
    pub witness: Option<Matrix>,
    pub candidates: u64,
}

fn witness_matrix(field: Field, cols: &[Vec<u64>]) -> Result<Matrix> {
    let cols: Vec<Vec<Scalar>> = cols.iter().map(|c| c.iter().map(|&v| field.int(v as i64)).collect()).collect();
    Matrix::from_columns(field, cols.len(), &cols)
}

fn digits(mut code: u64, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let d = code % p;
            code /= p;
            d
        })
        .collect()
}

/// Exhaustive search for an isomorphism `g2 -> g1`. Adapted mode ranges
/// over adapted changes of `g1` (`b_0 = 0`, `a_0 b_1 != 0`); otherwise over
/// all invertible matrices, for dimension at most 4.
pub fn iso_bruteforce(g1: &HomAlgebra, g2: &HomAlgebra, adapted: bool, budget: u64) -> Result<IsoResult> {
    if g1.field() != g2.field() {
        return Err(Error::FieldMismatch(g1.field(), g2.field()));
    }
    if g1.dim() != g2.dim() {
        return Err(Error::Dimension("algebras of different dimension".into()));
    }
    let (t1, t2) = (Table::new(g1)?, Table::new(g2)?);
    let (d, p) = (t1.d, t1.p);
    if adapted {
        if !has_adapted_relations(g1) || !has_adapted_relations(g2) {
            return Err(Error::Precondition("adapted search needs adapted presentations".into()));
        }
        let space = (p - 1)
            .checked_mul(p.checked_pow(d as u32 - 1).unwrap_or(u64::MAX))
            .and_then(|a| a.checked_mul(p - 1))
            .and_then(|a| a.checked_mul(p.checked_pow(d as u32 - 2)?))
            .unwrap_or(u64::MAX);
        if space > budget {
            return Err(Error::Budget(format!("{space} adapted candidates exceed the budget of {budget}")));
        }
        let mut count = 0;
        for ca in 0..(p - 1) * p.pow(d as u32 - 1) {
            let mut a = vec![ca % (p - 1) + 1];
            a.extend(digits(ca / (p - 1), p, d - 1));
            for cb in 0..(p - 1) * p.pow(d as u32 - 2) {
                count += 1;
                let mut b = vec![0, cb % (p - 1) + 1];
                b.extend(digits(cb / (p - 1), p, d - 2));
                let mut cols = vec![a.clone(), b];
                for i in 2..d {
                    let next = t1.bracket(&cols[0], &cols[i - 1]);
                    cols.push(next);
                }
                if partial_check(&t1, &t2, &cols, d, false) && rank_mod(&cols, p) == d {
                    return Ok(IsoResult {
                        isomorphic: true,
                        witness: Some(witness_matrix(g1.field(), &cols)?),
                        candidates: count,
                    });
                }
            }
        }
        return Ok(IsoResult { isomorphic: false, witness: None, candidates: count });
    }
    if d > 4 {
        return Err(Error::Unsupported("unrestricted search is limited to dimension 4".into()));
    }
    let mut count = 0u64;
    let mut cols: Vec<Vec<u64>> = Vec::new();
    let found = search_columns(&t1, &t2, &mut cols, &mut count, budget)?;
    Ok(IsoResult {
        isomorphic: found,
        witness: if found { Some(witness_matrix(g1.field(), &cols)?) } else { None },
        candidates: count,
    })
}

fn search_columns(t1: &Table, t2: &Table, cols: &mut Vec<Vec<u64>>, count: &mut u64, budget: u64) -> Result<bool> {
    let (d, p) = (t1.d, t1.p);
    if cols.len() == d {
        return Ok(rank_mod(cols, p) == d);
    }
    for code in 0..p.pow(d as u32) {
        *count += 1;
        if *count > budget {
            return Err(Error::Budget(format!("more than {budget} candidates")));
        }
        let col = digits(code, p, d);
        cols.push(col);
        if rank_mod(cols, p) == cols.len()
            && partial_check(t1, t2, cols, cols.len(), true)
            && search_columns(t1, t2, cols, count, budget)?
        {
            return Ok(true);
        }
        cols.pop();
    }
    Ok(false)
}

/// Partitions algebras into adapted-change isomorphism classes.
pub fn adapted_orbits(algebras: &[HomAlgebra], budget: u64) -> Result<Vec<Vec<usize>>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, g) in algebras.iter().enumerate() {
        let mut placed = false;
        for class in classes.iter_mut() {
            if iso_bruteforce(&algebras[class[0]], g, true, budget)?.isomorphic {
                class.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    Ok(classes)
}
