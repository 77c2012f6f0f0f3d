//! Quadratic duals, Frobenius pairings of finite-dimensional duals, bounded
//! exactness of Koszul-type complexes, and the hypersurface dual check.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::FieldValue;
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::ncgroebner::{complete, NCGroebnerBasis};
use crate::presentations::{parse_poly_in, relation_span_equal, word, NCPoly, Presentation, Word};

/// Relation coefficients of a quadratic presentation: column `i * n + j` holds
/// the coefficient of `x_i x_j`.
#[derive(Clone, Debug)]
pub struct QuadraticData {
    pub n: usize,
    pub matrix: Matrix,
}

impl QuadraticData {
    pub fn from_presentation(p: &Presentation) -> Result<Self> {
        let n = p.ngens();
        if p.degrees.iter().any(|&d| d != 1) {
            return Err(Error::NotQuadratic("generators must have degree one".into()));
        }
        let mut rows = Vec::new();
        for r in &p.relations {
            if r.is_zero() {
                continue;
            }
            let mut row = vec![FieldValue::zero(); n * n];
            for (w, c) in &r.terms {
                if w.len() != 2 {
                    return Err(Error::NotQuadratic(p.poly_text(r)));
                }
                row[w[0] as usize * n + w[1] as usize] = c.clone();
            }
            rows.push(row);
        }
        let mut matrix = if rows.is_empty() {
            Matrix::zeros(0, n * n)
        } else {
            Matrix::from_rows(rows)?
        };
        // keep an independent set of rows
        let pivots = matrix.rref();
        matrix.data.truncate(pivots.len());
        matrix.rows = pivots.len();
        Ok(QuadraticData { n, matrix })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows
    }
}

fn pair_word(n: usize, col: usize) -> Word {
    word(&[(col / n) as u8, (col % n) as u8])
}

/// The quadratic dual on generators a1..an.
pub fn quadratic_dual(p: &Presentation) -> Result<Presentation> {
    let q = QuadraticData::from_presentation(p)?;
    let n = q.n;
    let relations: Vec<NCPoly> = if q.rank() == 0 {
        // the free algebra is dual to k + V*
        (0..n * n).map(|k| NCPoly::monomial(pair_word(n, k), FieldValue::one())).collect()
    } else {
        let kernel = q.matrix.kernel();
        if q.rank() + kernel.len() != n * n {
            return Err(Error::Verification("relation space and its complement do not add up".into()));
        }
        if kernel.is_empty() {
            Vec::new()
        } else {
            let mut m = Matrix::from_rows(kernel)?;
            let piv = m.rref();
            m.data.truncate(piv.len());
            m.data
                .into_iter()
                .map(|row| {
                    NCPoly::from_terms(
                        row.into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(k, c)| (pair_word(n, k), c)),
                    )
                })
                .collect()
        }
    };
    let names = (1..=n).map(|i| format!("a{i}")).collect();
    Presentation::new(names, relations)
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingMatrix {
    pub k: u32,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub top_degree: u32,
    pub top_word: String,
    pub hilbert: Vec<u64>,
    pub splits: Vec<PairingMatrix>,
    pub nondegenerate: bool,
}

/// Coefficient of the top word in `u v` for each pair of basis words.
pub fn pairing_matrix(gb: &NCGroebnerBasis, rows: &[Word], cols: &[Word], top: &Word) -> Result<Matrix> {
    let mut data = Vec::new();
    for u in rows {
        let mut row = Vec::new();
        for v in cols {
            let mut uv = u.clone();
            uv.extend_from_slice(v);
            let nf = gb.normal_form(&NCPoly::monomial(uv, FieldValue::one()))?;
            row.push(nf.terms.get(top).cloned().unwrap_or_else(FieldValue::zero));
        }
        data.push(row);
    }
    Ok(Matrix { rows: rows.len(), cols: cols.len(), data })
}

fn matrix_text(m: &Matrix) -> Vec<Vec<String>> {
    m.data.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
}

fn word_text(p: &Presentation, w: &Word) -> String {
    p.poly_text(&NCPoly::monomial(w.clone(), FieldValue::one()))
}

/// Verify that `dual` is finite-dimensional with top degree `top` and that the
/// multiplication pairing into the top degree is nondegenerate.
pub fn frobenius_check(dual: &Presentation, top: u32, max_deg: u32) -> Result<PairingReport> {
    let bound = top.max(max_deg);
    let gb = complete(dual, bound);
    let h = gb.hilbert_function(bound)?;
    if h.values[top as usize] != 1 {
        return Err(Error::Verification(format!(
            "degree {top} has dimension {}, not 1",
            h.values[top as usize]
        )));
    }
    if let Some(d) = (top as usize + 1..h.values.len()).find(|&d| h.values[d] != 0) {
        return Err(Error::Verification(format!("the algebra is nonzero in degree {d}")));
    }
    let top_word = gb.standard_monomials(top)?.remove(0);
    let mut splits = Vec::new();
    let mut nondegenerate = true;
    for k in 0..=top {
        let rows = gb.standard_monomials(k)?;
        let cols = gb.standard_monomials(top - k)?;
        let m = pairing_matrix(&gb, &rows, &cols, &top_word)?;
        let rank = m.rank();
        nondegenerate &= rows.len() == cols.len() && rank == rows.len();
        splits.push(PairingMatrix {
            k,
            rows: rows.iter().map(|w| word_text(dual, w)).collect(),
            cols: cols.iter().map(|w| word_text(dual, w)).collect(),
            matrix: matrix_text(&m),
            rank,
        });
    }
    Ok(PairingReport {
        top_degree: top,
        top_word: word_text(dual, &top_word),
        hilbert: h.values,
        splits,
        nondegenerate,
    })
}

/// A matrix with noncommutative polynomial entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<NCPoly>>,
}

/// JSON form: entries written in the presentation grammar.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl PolyMatrix {
    pub fn new(entries: Vec<Vec<NCPoly>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("ragged matrix".into()));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn parse(rows: &[&[&str]], names: &[String]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_poly_in(s, names)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(entries)
    }

    pub fn from_json(j: &PolyMatrixJson, names: &[String]) -> Result<Self> {
        let rows: Vec<Vec<&str>> = j.entries.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
        let refs: Vec<&[&str]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = PolyMatrix::parse(&refs, names)?;
        if m.rows != j.rows || m.cols != j.cols {
            return Err(Error::Invalid("matrix size does not match its entries".into()));
        }
        Ok(m)
    }

    pub fn to_json(&self, p: &Presentation) -> PolyMatrixJson {
        PolyMatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|f| p.poly_text(f)).collect())
                .collect(),
        }
    }

    pub fn mul(&self, o: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != o.rows {
            return Err(Error::Invalid("matrix sizes do not compose".into()));
        }
        let entries = (0..self.rows)
            .map(|i| {
                (0..o.cols)
                    .map(|j| {
                        (0..self.cols).fold(NCPoly::zero(), |acc, k| {
                            acc.add(&self.entries[i][k].mul(&o.entries[k][j]))
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(PolyMatrix { rows: self.rows, cols: o.cols, entries })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KoszulReport {
    pub is_complex: bool,
    /// Generator degrees of each free module, starting with the algebra itself.
    pub shifts: Vec<Vec<u32>>,
    /// Ranks of each map in each internal degree: `ranks[i][d]` for map i + 1.
    pub ranks: Vec<Vec<usize>>,
    pub exact: bool,
    pub failure: Option<String>,
}

fn module_basis(gb: &NCGroebnerBasis, shifts: &[u32], d: u32) -> Result<Vec<(usize, Word)>> {
    let mut out = Vec::new();
    for (j, &s) in shifts.iter().enumerate() {
        if s <= d {
            for w in gb.standard_monomials(d - s)? {
                out.push((j, w));
            }
        }
    }
    Ok(out)
}

/// Exactness of `F_k -> ... -> F_1 -> A -> k` where `matrices[i]` is the map
/// `F_{i+1} -> F_i` acting by left multiplication on column vectors.
pub fn koszul_complex_check(p: &Presentation, matrices: &[PolyMatrix], max_deg: u32) -> Result<KoszulReport> {
    if matrices.is_empty() || matrices[0].rows != 1 {
        return Err(Error::Invalid("the first matrix must have one row".into()));
    }
    for w in matrices.windows(2) {
        if w[0].cols != w[1].rows {
            return Err(Error::Invalid("matrix sizes do not compose".into()));
        }
    }
    let maxent = matrices
        .iter()
        .flat_map(|m| m.entries.iter().flatten())
        .filter(|f| !f.is_zero())
        .map(|f| f.degree(&p.degrees))
        .max()
        .unwrap_or(1);
    // generator shifts from the entry degrees
    let mut shifts: Vec<Vec<u32>> = vec![vec![0]];
    for m in matrices {
        let prev = shifts.last().unwrap().clone();
        let mut s = Vec::new();
        for j in 0..m.cols {
            let mut deg = None;
            for (i, row) in m.entries.iter().enumerate() {
                let f = &row[j];
                if f.is_zero() {
                    continue;
                }
                if !f.is_homogeneous(&p.degrees) {
                    return Err(Error::Inhomogeneous(p.poly_text(f)));
                }
                let e = f.degree(&p.degrees) + prev[i];
                if deg.is_some_and(|d| d != e) {
                    return Err(Error::Invalid(format!("column {j} is not homogeneous")));
                }
                deg = Some(e);
            }
            s.push(deg.ok_or_else(|| Error::Invalid(format!("column {j} is zero")))?);
        }
        shifts.push(s);
    }
    let top_shift = shifts.iter().flatten().copied().max().unwrap_or(0);
    let gb = complete(p, (max_deg + maxent).max(top_shift + maxent));
    let mut is_complex = true;
    for (i, w) in matrices.windows(2).enumerate() {
        let prod = w[0].mul(&w[1])?;
        for row in &prod.entries {
            for f in row {
                if !gb.reduces_to_zero(f)? {
                    is_complex = false;
                    let _ = i;
                }
            }
        }
    }
    let mut ranks = vec![Vec::new(); matrices.len()];
    let mut failure = None;
    if !is_complex {
        failure = Some("consecutive matrices do not multiply to zero".into());
    }
    let hd = gb.hilbert_function(max_deg)?;
    for d in 0..=max_deg {
        let mut dims = vec![hd.values[d as usize] as usize];
        for (i, m) in matrices.iter().enumerate() {
            let src = module_basis(&gb, &shifts[i + 1], d)?;
            let tgt = module_basis(&gb, &shifts[i], d)?;
            dims.push(src.len());
            let tix: HashMap<(usize, Word), usize> = tgt.into_iter().enumerate().map(|(k, b)| (b, k)).collect();
            let mut ech = Echelon::new();
            for (j, w) in &src {
                let mono = NCPoly::monomial(w.clone(), FieldValue::one());
                let mut v: SparseVec = Vec::new();
                for r in 0..m.rows {
                    let f = &m.entries[r][*j];
                    if f.is_zero() {
                        continue;
                    }
                    let nf = gb.normal_form(&f.mul(&mono))?;
                    for (u, c) in nf.terms {
                        v.push((tix[&(r, u)], c));
                    }
                }
                v.sort_by_key(|x| x.0);
                ech.insert(&v);
            }
            ranks[i].push(ech.rank());
        }
        if failure.is_some() {
            continue;
        }
        // homology of A -> k
        let coker = dims[0] - ranks[0][d as usize];
        if coker != usize::from(d == 0) {
            failure = Some(format!("the cokernel at the algebra is wrong in degree {d}"));
            continue;
        }
        for i in 1..dims.len() {
            let kernel = dims[i] - ranks[i - 1][d as usize];
            let image = ranks.get(i).map_or(0, |r| r[d as usize]);
            if kernel != image {
                failure = Some(format!("not exact at term {i} in degree {d}"));
                break;
            }
        }
    }
    Ok(KoszulReport {
        is_complex,
        shifts,
        exact: failure.is_none(),
        ranks,
        failure,
    })
}

/// Split a quadratic relation as `sum_i x_i f_i` (left) or `sum_i f_i x_i` (right).
fn split_relation(r: &NCPoly, n: usize, left: bool) -> Vec<NCPoly> {
    let mut out = vec![NCPoly::zero(); n];
    for (w, c) in &r.terms {
        let (g, rest) = if left { (w[0], &w[1..]) } else { (w[w.len() - 1], &w[..w.len() - 1]) };
        out[g as usize].add_term(Word::from_slice(rest), c);
    }
    out
}

/// The length-four complex of a quadratic algebra on n generators with r
/// relations: `M1 = [x_1 .. x_n]`, `M2` from the left factorization of the
/// relations, `M3` from scaled right factorizations chosen so that
/// `M2 M3 = 0`, and `M4` the column of generators.
pub fn koszul_matrices(p: &Presentation) -> Result<Vec<PolyMatrix>> {
    let n = p.ngens();
    let rels: Vec<NCPoly> = p.relations.iter().filter(|r| !r.is_zero()).cloned().collect();
    let r = rels.len();
    let m1 = PolyMatrix::new(vec![(0..n).map(NCPoly::var).collect()])?;
    let lefts: Vec<Vec<NCPoly>> = rels.iter().map(|f| split_relation(f, n, true)).collect();
    let rights: Vec<Vec<NCPoly>> = rels.iter().map(|f| split_relation(f, n, false)).collect();
    let m2 = PolyMatrix::new((0..n).map(|i| (0..r).map(|k| lefts[k][i].clone()).collect()).collect())?;
    // unknown scalars lambda_k on row k of M3: (M2 M3)_{ij} = sum_k lambda_k L_k[i] R_k[j] = 0 in degree 2
    let gb = complete(p, 3);
    let basis2 = gb.standard_monomials(2)?;
    let index: HashMap<Word, usize> = basis2.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut block = vec![vec![FieldValue::zero(); r]; basis2.len()];
            for k in 0..r {
                let nf = gb.normal_form(&lefts[k][i].mul(&rights[k][j]))?;
                for (w, c) in nf.terms {
                    block[index[&w]][k] = c;
                }
            }
            rows.extend(block);
        }
    }
    let kernel = Matrix::from_rows(rows)?.kernel();
    let lambda = kernel
        .into_iter()
        .find(|v| v.iter().all(|c| !c.is_zero()))
        .ok_or_else(|| Error::Verification("no scaling of the right factorizations gives a complex".into()))?;
    let m3 = PolyMatrix::new(
        (0..r)
            .map(|k| (0..n).map(|j| rights[k][j].scale(&lambda[k])).collect())
            .collect(),
    )?;
    let m4 = PolyMatrix::new((0..n).map(|i| vec![NCPoly::var(i)]).collect())?;
    Ok(vec![m1, m2, m3, m4])
}

#[derive(Clone, Debug, Serialize)]
pub struct HypersurfaceDualReport {
    pub dual_relations: usize,
    pub w_central: bool,
    pub dual_hilbert: Vec<u64>,
    pub quotient_hilbert: Vec<u64>,
    pub target_hilbert: Vec<u64>,
    pub w_regular: bool,
    pub quotient_span_equal: bool,
    pub holds: bool,
}

/// For `A = p / (z)`: check that `w` is central and regular in the dual of A
/// and that the dual of A modulo `w` matches the dual of `p`.
pub fn hypersurface_dual_check(p: &Presentation, z: &NCPoly, w: &NCPoly, max_deg: u32) -> Result<HypersurfaceDualReport> {
    let gbp = complete(p, 3);
    if z.is_zero() || gbp.reduces_to_zero(z)? {
        return Err(Error::Invalid("z is zero in the algebra".into()));
    }
    let a = p.quotient(std::slice::from_ref(z))?;
    let ad = quadratic_dual(&a)?;
    let sd = quadratic_dual(p)?;
    let gba = complete(&ad, max_deg + 2);
    let w_central = gba.is_central(w)?;
    let dual_hilbert = gba.hilbert_function(max_deg)?.values;
    let q = ad.quotient(std::slice::from_ref(w))?;
    let quotient_hilbert = complete(&q, max_deg).hilbert_function(max_deg)?.values;
    let target_hilbert = complete(&sd, max_deg).hilbert_function(max_deg)?.values;
    let wdeg = w.degree(&ad.degrees) as usize;
    let w_regular = (0..=max_deg as usize).all(|d| {
        let prev = if d >= wdeg { dual_hilbert[d - wdeg] } else { 0 };
        quotient_hilbert[d] + prev == dual_hilbert[d]
    });
    let quotient_span_equal = relation_span_equal(&q, &sd);
    let holds = w_central && w_regular && quotient_hilbert == target_hilbert;
    Ok(HypersurfaceDualReport {
        dual_relations: ad.relations.len(),
        w_central,
        dual_hilbert,
        quotient_hilbert,
        target_hilbert,
        w_regular,
        quotient_span_equal,
        holds,
    })
}
