//! Point schemes, line schemes, Plücker geometry and incidence for quadratic
//! algebras on four generators.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::commutative::{for_each_monomial, CIdeal, CPoly, Exp};
use crate::error::{Error, Result};
use crate::exactnum::FieldValue;
use crate::linalg::{dense_to_sparse, Echelon, Matrix};
use crate::presentations::Presentation;
use crate::quadraticdual::quadratic_dual;

/// Index pairs of the Plücker coordinates, in the order M12, M13, M14, M23, M24, M34.
pub const PLUECKER_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
pub const PLUECKER_NAMES: [&str; 6] = ["M12", "M13", "M14", "M23", "M24", "M34"];

fn x_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

pub fn pluecker_names() -> Vec<String> {
    PLUECKER_NAMES.iter().map(|s| s.to_string()).collect()
}

fn mat(rows: Vec<Vec<FieldValue>>) -> Matrix {
    Matrix::from_rows(rows).expect("rectangular")
}

/// Scale so that the first nonzero entry is 1. Returns false for the zero vector.
fn normalize(v: &mut [FieldValue]) -> bool {
    let Some(k) = v.iter().position(|c| !c.is_zero()) else {
        return false;
    };
    let inv = v[k].inv().expect("nonzero");
    for c in v.iter_mut() {
        *c = &*c * &inv;
    }
    true
}

fn coords_text(v: &[FieldValue]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(":"))
}

fn serialize_coords<S: Serializer>(v: &[FieldValue], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

fn rank_of(rows: &[&[FieldValue]]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(&dense_to_sparse(r));
    }
    e.rank()
}

/// A point of projective space, stored with its first nonzero coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProjPoint {
    #[serde(serialize_with = "serialize_coords")]
    coords: Vec<FieldValue>,
}

impl ProjPoint {
    pub fn new(mut coords: Vec<FieldValue>) -> Result<Self> {
        if !normalize(&mut coords) {
            return Err(Error::Invalid("all homogeneous coordinates are zero".into()));
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(c: &[i64]) -> Result<Self> {
        ProjPoint::new(c.iter().map(|&k| FieldValue::from_int(k)).collect())
    }

    pub fn coords(&self) -> &[FieldValue] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&coords_text(&self.coords))
    }
}

/// Coordinate point e_j (1-based).
pub fn e_point(j: usize) -> ProjPoint {
    let mut c = vec![FieldValue::zero(); 4];
    c[j - 1] = FieldValue::one();
    ProjPoint::new(c).expect("nonzero")
}

fn i_pow(k: i64) -> FieldValue {
    FieldValue::zeta_pow(2 * k.rem_euclid(4))
}

/// p_{j,k} = [1 : i^j : i^k : i^(-j-k)].
pub fn p_point(j: i64, k: i64) -> ProjPoint {
    ProjPoint::new(vec![FieldValue::one(), i_pow(j), i_pow(k), i_pow(-j - k)]).expect("nonzero")
}

/// q_{j,k} = [1 : i^j : zeta i^k : zeta^3 i^(-j-k)].
pub fn q_point(j: i64, k: i64) -> ProjPoint {
    let z = FieldValue::zeta_pow(1);
    let z3 = FieldValue::zeta_pow(3);
    ProjPoint::new(vec![FieldValue::one(), i_pow(j), &z * &i_pow(k), &z3 * &i_pow(-j - k)]).expect("nonzero")
}

fn named_family(f: fn(i64, i64) -> ProjPoint, letter: char) -> Vec<(String, ProjPoint)> {
    let mut out: Vec<(String, ProjPoint)> = (1..=4).map(|j| (format!("e{j}"), e_point(j))).collect();
    for j in 0..4 {
        for k in 0..4 {
            out.push((format!("{letter}{j}{k}"), f(j, k)));
        }
    }
    out
}

/// e1..e4 followed by p_{j,k}.
pub fn s_points() -> Vec<(String, ProjPoint)> {
    named_family(p_point, 'p')
}

/// e1..e4 followed by q_{j,k}.
pub fn t_points() -> Vec<(String, ProjPoint)> {
    named_family(q_point, 'q')
}

/// A line in P^3, kept as the reduced row echelon form of a rank two 2x4 matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineInP3 {
    rows: [Vec<FieldValue>; 2],
}

impl LineInP3 {
    pub fn new(a: &[FieldValue], b: &[FieldValue]) -> Result<Self> {
        if a.len() != 4 || b.len() != 4 {
            return Err(Error::Invalid("lines in P^3 need 4 coordinates".into()));
        }
        let mut m = mat(vec![a.to_vec(), b.to_vec()]);
        if m.rref().len() != 2 {
            return Err(Error::Invalid("the two rows do not span a line".into()));
        }
        Ok(LineInP3 {
            rows: [m.data[0].clone(), m.data[1].clone()],
        })
    }

    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Result<Self> {
        LineInP3::new(p.coords(), q.coords())
    }

    /// The zero locus of two independent linear forms, given by coefficient rows.
    pub fn cut_out_by(f: &[FieldValue], g: &[FieldValue]) -> Result<Self> {
        let k = mat(vec![f.to_vec(), g.to_vec()]).kernel();
        if k.len() != 2 {
            return Err(Error::Invalid("the linear forms do not cut out a line".into()));
        }
        LineInP3::new(&k[0], &k[1])
    }

    pub fn from_pluecker(m: &PlueckerPoint) -> Result<Self> {
        if !m.satisfies_pluecker() {
            return Err(Error::Invalid("point is off the Grassmannian".into()));
        }
        let w = antisymmetric_rows(m.coords());
        let mut e = Echelon::new();
        let mut picked = Vec::new();
        for r in &w {
            if e.insert(&dense_to_sparse(r)) {
                picked.push(r.clone());
            }
        }
        if picked.len() != 2 {
            return Err(Error::Invalid("Plücker vector does not determine a line".into()));
        }
        LineInP3::new(&picked[0], &picked[1])
    }

    pub fn rows(&self) -> &[Vec<FieldValue>; 2] {
        &self.rows
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        rank_of(&[&self.rows[0], &self.rows[1], p.coords()]) == 2
    }
}

impl fmt::Display for LineInP3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", coords_text(&self.rows[0]), coords_text(&self.rows[1]))
    }
}

/// Rows k of the antisymmetric matrix (M_kj); each row is a point of the line.
fn antisymmetric_rows(m: &[FieldValue]) -> Vec<Vec<FieldValue>> {
    let mut w = vec![vec![FieldValue::zero(); 4]; 4];
    for (idx, &(i, j)) in PLUECKER_PAIRS.iter().enumerate() {
        w[i][j] = m[idx].clone();
        w[j][i] = -&m[idx];
    }
    w
}

/// Plücker coordinates (M12, M13, M14, M23, M24, M34) of a line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PlueckerPoint {
    #[serde(serialize_with = "serialize_coords")]
    coords: Vec<FieldValue>,
}

impl PlueckerPoint {
    pub fn new(mut coords: Vec<FieldValue>) -> Result<Self> {
        if coords.len() != 6 {
            return Err(Error::Invalid("Plücker points have 6 coordinates".into()));
        }
        if !normalize(&mut coords) {
            return Err(Error::Invalid("all Plücker coordinates are zero".into()));
        }
        Ok(PlueckerPoint { coords })
    }

    pub fn coords(&self) -> &[FieldValue] {
        &self.coords
    }

    pub fn satisfies_pluecker(&self) -> bool {
        pluecker_poly().eval(&self.coords).is_zero()
    }
}

impl fmt::Display for PlueckerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&coords_text(&self.coords))
    }
}

fn wedge(a: &[FieldValue], b: &[FieldValue]) -> Vec<FieldValue> {
    PLUECKER_PAIRS
        .iter()
        .map(|&(i, j)| &(&a[i] * &b[j]) - &(&a[j] * &b[i]))
        .collect()
}

pub fn pluecker_embed(l: &LineInP3) -> PlueckerPoint {
    PlueckerPoint::new(wedge(&l.rows[0], &l.rows[1])).expect("rank two")
}

/// P = M12 M34 - M13 M24 + M14 M23.
pub fn pluecker_poly() -> CPoly {
    let v = |i| CPoly::var(6, i);
    v(0).mul(&v(5)).sub(&v(1).mul(&v(4))).add(&v(2).mul(&v(3)))
}

/// Images of N12, N13, N14, N23, N24, N34 under N12->M34, N13->-M24, N14->M23,
/// N23->M14, N24->-M13, N34->M12.
pub fn orthogonality_map(nvars: usize, offset: usize) -> Vec<CPoly> {
    let v = |i: usize| CPoly::var(nvars, offset + i);
    vec![v(5), v(4).neg(), v(3), v(2), v(1).neg(), v(0)]
}

/// A matrix whose entries are linear forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFormMatrix {
    pub nvars: usize,
    pub entries: Vec<Vec<CPoly>>,
}

impl LinearFormMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, |r| r.len())
    }

    pub fn eval(&self, pt: &[FieldValue]) -> Matrix {
        mat(
            self.entries
                .iter()
                .map(|r| r.iter().map(|e| e.eval(pt)).collect())
                .collect(),
        )
    }

    pub fn to_text(&self, names: &[String]) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.to_text(names)).collect())
            .collect()
    }
}

/// Write each relation as sum_j M[r][j] x_j, with M[r][j] the left factor.
pub fn relation_matrix(p: &Presentation) -> Result<LinearFormMatrix> {
    let n = p.ngens();
    if p.relations.is_empty() {
        return Err(Error::Invalid("presentation has no relations".into()));
    }
    let mut entries = vec![vec![CPoly::zero(n); n]; p.relations.len()];
    for (r, rel) in p.relations.iter().enumerate() {
        for (w, c) in &rel.terms {
            if w.len() != 2 {
                return Err(Error::NotQuadratic(p.poly_text(rel)));
            }
            let left = CPoly::var(n, w[0] as usize).scale(c);
            entries[r][w[1] as usize] = entries[r][w[1] as usize].add(&left);
        }
    }
    Ok(LinearFormMatrix { nvars: n, entries })
}

/// All k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn poly_det(m: &[Vec<CPoly>], nvars: usize) -> CPoly {
    let n = m.len();
    if n == 0 {
        return CPoly::one(nvars);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = CPoly::zero(nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<CPoly>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let t = m[0][j].mul(&poly_det(&minor, nvars));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

fn maximal_minors(m: &LinearFormMatrix, rows: &[Vec<usize>]) -> Vec<CPoly> {
    rows.par_iter()
        .map(|s| {
            let sub: Vec<Vec<CPoly>> = s.iter().map(|&r| m.entries[r].clone()).collect();
            poly_det(&sub, m.nvars)
        })
        .collect()
}

/// The maximal minors of M, in lexicographic order of row subsets.
pub fn point_scheme_ideal(m: &LinearFormMatrix) -> Result<CIdeal> {
    let c = m.cols();
    if m.rows() < c {
        return Err(Error::Invalid("fewer relations than generators".into()));
    }
    let gens = maximal_minors(m, &combinations(m.rows(), c));
    CIdeal::new(x_names(m.nvars), gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointTau {
    pub is_point: bool,
    pub rank: usize,
    pub tau: Option<ProjPoint>,
}

/// Evaluate M at p; p is a point of the scheme iff M(p) has corank one, and then
/// tau(p) spans the kernel.
pub fn verify_point_and_tau(p: &ProjPoint, m: &LinearFormMatrix) -> Result<PointTau> {
    let mp = m.eval(p.coords());
    let rank = mp.rank();
    let n = m.cols();
    if rank == n {
        return Ok(PointTau { is_point: false, rank, tau: None });
    }
    if rank + 1 < n {
        return Err(Error::Verification(format!("M({p}) has rank {rank}")));
    }
    let k = mp.kernel();
    Ok(PointTau {
        is_point: true,
        rank,
        tau: Some(ProjPoint::new(k[0].clone())?),
    })
}

/// Orbits of tau on a named point set, each listed from its first member.
pub fn tau_orbits(points: &[(String, ProjPoint)], m: &LinearFormMatrix) -> Result<Vec<Vec<String>>> {
    let mut image = Vec::with_capacity(points.len());
    for (name, p) in points {
        let t = verify_point_and_tau(p, m)?;
        let tau = t
            .tau
            .ok_or_else(|| Error::Verification(format!("{name} is not on the point scheme")))?;
        let k = points
            .iter()
            .position(|(_, q)| *q == tau)
            .ok_or_else(|| Error::Verification(format!("tau({name}) = {tau} leaves the set")))?;
        image.push(k);
    }
    let mut seen = vec![false; points.len()];
    let mut orbits = Vec::new();
    for start in 0..points.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            orbit.push(points[k].0.clone());
            k = image[k];
        }
        if k != start {
            return Err(Error::Verification("tau is not injective on the set".into()));
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// Quartics in N_ij expanded in u, v, with a tracking echelon for rewriting.
struct NBasis {
    monomials: Vec<Exp>,
    index: HashMap<Exp, usize>,
    echelon: Echelon,
}

impl NBasis {
    fn new() -> Self {
        let u = |i| CPoly::var(8, i);
        let v = |i| CPoly::var(8, 4 + i);
        let n: Vec<CPoly> = PLUECKER_PAIRS
            .iter()
            .map(|&(i, j)| u(i).mul(&v(j)).sub(&u(j).mul(&v(i))))
            .collect();
        let mut monomials = Vec::new();
        for_each_monomial(6, 4, &mut |e| monomials.push(e.clone()));
        let mut index = HashMap::new();
        let mut echelon = Echelon::tracking();
        for e in &monomials {
            let mut f = CPoly::one(8);
            for (k, &p) in e.iter().enumerate() {
                if p > 0 {
                    f = f.mul(&n[k].pow(p as u32));
                }
            }
            let v = Self::vectorize(&f, &mut index, true).expect("growing index");
            echelon.insert(&v);
        }
        NBasis { monomials, index, echelon }
    }

    fn vectorize(f: &CPoly, index: &mut HashMap<Exp, usize>, grow: bool) -> Option<Vec<(usize, FieldValue)>> {
        let mut v = Vec::with_capacity(f.len());
        for (e, c) in f.terms() {
            let k = match index.get(e) {
                Some(&k) => k,
                None if grow => {
                    let k = index.len();
                    index.insert(e.clone(), k);
                    k
                }
                None => return None,
            };
            v.push((k, c.clone()));
        }
        v.sort_by_key(|x| x.0);
        Some(v)
    }

    /// A quartic g in N with g(N(u, v)) = f, if one exists.
    fn rewrite(&self, f: &CPoly) -> Option<CPoly> {
        let mut idx = self.index.clone();
        let v = Self::vectorize(f, &mut idx, false)?;
        let combo = self.echelon.express(&v)?;
        Some(CPoly::from_terms(
            6,
            combo.into_iter().map(|(k, c)| (self.monomials[k].clone(), c)),
        ))
    }
}

/// The line scheme ideal in Plücker coordinates: the 8x8 minors of [M^_u M^_v],
/// rewritten in N_ij, carried to M_ij by the orthogonality map, together with P.
pub fn line_scheme_ideal(p: &Presentation) -> Result<CIdeal> {
    if p.ngens() != 4 {
        return Err(Error::Invalid("line schemes are computed for four generators".into()));
    }
    let dual = quadratic_dual(p)?;
    let mhat = relation_matrix(&dual)?;
    let r = mhat.rows();
    if r < 8 {
        return Err(Error::Invalid(format!("dual has {r} relations; need at least 8")));
    }
    let subsets4 = combinations(r, 4);
    let minors4: HashMap<Vec<usize>, CPoly> = subsets4
        .iter()
        .cloned()
        .zip(maximal_minors(&mhat, &subsets4))
        .collect();
    let u_map = [0, 1, 2, 3];
    let v_map = [4, 5, 6, 7];
    let splits = combinations(8, 4);
    let big: Vec<CPoly> = combinations(r, 8)
        .par_iter()
        .map(|s| {
            let mut acc = CPoly::zero(8);
            for t in &splits {
                let top: Vec<usize> = t.iter().map(|&i| s[i]).collect();
                let bottom: Vec<usize> = (0..8).filter(|i| !t.contains(i)).map(|i| s[i]).collect();
                let (a, b) = (&minors4[&top], &minors4[&bottom]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let term = a.remap(8, &u_map).mul(&b.remap(8, &v_map));
                acc = if t.iter().sum::<usize>() % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        })
        .collect();
    let basis = NBasis::new();
    let ortho = orthogonality_map(6, 0);
    let mut gens = Vec::new();
    for f in &big {
        if f.is_zero() {
            continue;
        }
        let g = basis
            .rewrite(f)
            .ok_or_else(|| Error::Verification("a minor is not a quartic in the N_ij".into()))?;
        let h = g.substitute(&ortho);
        if !h.is_zero() {
            gens.push(h);
        }
    }
    gens.push(pluecker_poly());
    CIdeal::new(pluecker_names(), gens)
}

#[derive(Clone, Debug)]
pub struct Parametrization {
    pub params: Vec<String>,
    pub coords: Vec<CPoly>,
}

impl Parametrization {
    pub fn parse(params: &[&str], coords: &[&str]) -> Result<Self> {
        let names: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        let coords = coords.iter().map(|c| CPoly::parse(c, &names)).collect::<Result<Vec<_>>>()?;
        Ok(Parametrization { params: names, coords })
    }
}

#[derive(Clone, Debug)]
pub struct SchemeComponent {
    pub label: String,
    pub ideal: CIdeal,
    pub parametrization: Option<Parametrization>,
}

impl SchemeComponent {
    pub fn new(label: &str, ideal: CIdeal) -> Self {
        SchemeComponent {
            label: label.into(),
            ideal,
            parametrization: None,
        }
    }

    /// Component of a Plücker-coordinate scheme from generator strings.
    pub fn pluecker(label: &str, gens: &[&str]) -> Result<Self> {
        Ok(SchemeComponent::new(label, CIdeal::parse(&PLUECKER_NAMES, gens)?))
    }

    pub fn with_parametrization(mut self, p: Parametrization) -> Self {
        self.parametrization = Some(p);
        self
    }

    /// True iff every generator of `other` lies in this component's ideal,
    /// so that the component sits inside V(other).
    pub fn lies_in(&self, other: &CIdeal) -> bool {
        let gb = self.ideal.groebner(crate::commutative::TermOrder::DegRevLex);
        other.gens.iter().all(|g| gb.contains(g))
    }

    /// Coefficient rows of the linear generators, and whether P is among the others.
    /// Fails if some generator is neither linear nor a multiple of P.
    pub fn linear_system(&self) -> Result<(Vec<Vec<FieldValue>>, bool)> {
        let n = self.ideal.nvars();
        let p = pluecker_poly();
        let mut rows = Vec::new();
        let mut has_p = false;
        for g in &self.ideal.gens {
            match g.total_degree() {
                None => continue,
                Some(1) if g.is_homogeneous() => {
                    let mut row = vec![FieldValue::zero(); n];
                    for (e, c) in g.terms() {
                        let k = e.iter().position(|&x| x == 1).expect("linear");
                        row[k] = c.clone();
                    }
                    rows.push(row);
                }
                Some(2) if n == 6 => {
                    let c = g.coeff(&[1, 0, 0, 0, 0, 1]);
                    if c.is_zero() || *g != p.scale(&c) {
                        return Err(Error::Invalid(format!("{}: generator is not linear or P", self.label)));
                    }
                    has_p = true;
                }
                _ => return Err(Error::Invalid(format!("{}: generator is not linear or P", self.label))),
            }
        }
        Ok((rows, has_p))
    }
}

/// Substitute the parametrization into every generator; true iff all vanish identically.
pub fn component_parametrization_check(c: &SchemeComponent, ideal: &CIdeal) -> Result<bool> {
    let par = c
        .parametrization
        .as_ref()
        .ok_or_else(|| Error::Invalid(format!("{} has no parametrization", c.label)))?;
    if par.coords.len() != ideal.nvars() {
        return Err(Error::Invalid("parametrization has the wrong number of coordinates".into()));
    }
    Ok(ideal.gens.iter().all(|g| g.substitute(&par.coords).is_zero()))
}

/// A quadric with the two families of lines on it. Ruling forms live in
/// k[x1..x4, s, t] and are linear in each group.
#[derive(Clone, Debug)]
pub struct QuadricRuling {
    pub quadric: CPoly,
    pub ruling_one: [CPoly; 2],
    pub ruling_two: [CPoly; 2],
}

fn ruling_names() -> Vec<String> {
    ["x1", "x2", "x3", "x4", "s", "t"].iter().map(|s| s.to_string()).collect()
}

/// Split L = s A + t B into the linear forms A, B in x1..x4.
fn split_st(l: &CPoly) -> (CPoly, CPoly) {
    let mut a = CPoly::zero(4);
    let mut b = CPoly::zero(4);
    for (e, c) in l.terms() {
        let x: Exp = e[..4].iter().copied().collect();
        if e[4] == 1 {
            a.add_term(x, c.clone());
        } else {
            b.add_term(x, c.clone());
        }
    }
    (a, b)
}

fn join_st(a: &CPoly, b: &CPoly) -> CPoly {
    let s = CPoly::var(6, 4);
    let t = CPoly::var(6, 5);
    let m = [0, 1, 2, 3];
    s.mul(&a.remap(6, &m)).add(&t.mul(&b.remap(6, &m)))
}

impl QuadricRuling {
    pub fn parse(quadric: &str, ruling_one: [&str; 2], ruling_two: [&str; 2]) -> Result<Self> {
        let names = ruling_names();
        Ok(QuadricRuling {
            quadric: CPoly::parse(quadric, &x_names(4))?,
            ruling_one: [CPoly::parse(ruling_one[0], &names)?, CPoly::parse(ruling_one[1], &names)?],
            ruling_two: [CPoly::parse(ruling_two[0], &names)?, CPoly::parse(ruling_two[1], &names)?],
        })
    }

    /// From the quadric and one ruling V(sA1+tB1, sA2+tB2), the other ruling is
    /// V(sA1+tA2, sB1+tB2).
    pub fn from_ruling_one(quadric: &str, ruling_one: [&str; 2]) -> Result<Self> {
        let names = ruling_names();
        let l1 = CPoly::parse(ruling_one[0], &names)?;
        let l2 = CPoly::parse(ruling_one[1], &names)?;
        let (a1, b1) = split_st(&l1);
        let (a2, b2) = split_st(&l2);
        Ok(QuadricRuling {
            quadric: CPoly::parse(quadric, &x_names(4))?,
            ruling_two: [join_st(&a1, &a2), join_st(&b1, &b2)],
            ruling_one: [l1, l2],
        })
    }

    /// The quadric swept out by ruling one: A1 B2 - A2 B1.
    pub fn swept_quadric(&self) -> CPoly {
        let (a1, b1) = split_st(&self.ruling_one[0]);
        let (a2, b2) = split_st(&self.ruling_one[1]);
        a1.mul(&b2).sub(&a2.mul(&b1))
    }
}

/// Plücker coordinates of V(L1, L2) as quadratic forms in (s, t).
pub fn ruling_pluecker(pair: &[CPoly; 2]) -> Vec<CPoly> {
    let coeff_row = |l: &CPoly| -> Vec<CPoly> {
        let mut row = vec![CPoly::zero(2); 4];
        for (e, c) in l.terms() {
            let j = e[..4].iter().position(|&k| k == 1).expect("linear in x");
            let st: Exp = e[4..].iter().copied().collect();
            row[j].add_term(st, c.clone());
        }
        row
    };
    let a = coeff_row(&pair[0]);
    let b = coeff_row(&pair[1]);
    let n: Vec<CPoly> = PLUECKER_PAIRS
        .iter()
        .map(|&(i, j)| a[i].mul(&b[j]).sub(&a[j].mul(&b[i])))
        .collect();
    orthogonality_map(6, 0).iter().map(|f| f.substitute(&n)).collect()
}

fn proportional(f: &CPoly, g: &CPoly) -> bool {
    let Some((e, c)) = f.terms().iter().next() else {
        return g.is_zero();
    };
    let d = g.coeff(e);
    !d.is_zero() && g.scale(c).sub(&f.scale(&d)).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RulingReport {
    pub lines_on_quadric: bool,
    pub quadric_matches_ruling: bool,
    pub ruling_one_in_component: bool,
    pub ruling_two_outside: bool,
    pub rank_drop_is_quadric: bool,
}

impl RulingReport {
    pub fn ok(&self) -> bool {
        self.lines_on_quadric
            && self.quadric_matches_ruling
            && self.ruling_one_in_component
            && self.ruling_two_outside
            && self.rank_drop_is_quadric
    }
}

fn ruling_on_quadric(q: &CPoly, pair: &[CPoly; 2]) -> bool {
    let m = ruling_pluecker(pair);
    let zero = CPoly::zero(2);
    let mut w = vec![vec![zero.clone(); 4]; 4];
    for (idx, &(i, j)) in PLUECKER_PAIRS.iter().enumerate() {
        w[i][j] = m[idx].clone();
        w[j][i] = m[idx].neg();
    }
    if w.iter().all(|r| r.iter().all(|e| e.is_zero())) {
        return false;
    }
    for k in 0..4 {
        if !q.substitute(&w[k]).is_zero() {
            return false;
        }
        for l in k + 1..4 {
            let sum: Vec<CPoly> = (0..4).map(|j| w[k][j].add(&w[l][j])).collect();
            if !q.substitute(&sum).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Checks a quadric and its rulings against a conic component of the line scheme.
pub fn quadric_ruling_check(qr: &QuadricRuling, c: &SchemeComponent) -> Result<RulingReport> {
    let lines_on_quadric = ruling_on_quadric(&qr.quadric, &qr.ruling_one) && ruling_on_quadric(&qr.quadric, &qr.ruling_two);
    let quadric_matches_ruling = proportional(&qr.quadric, &qr.swept_quadric());
    let m1 = ruling_pluecker(&qr.ruling_one);
    let m2 = ruling_pluecker(&qr.ruling_two);
    let ruling_one_in_component = c.ideal.gens.iter().all(|g| g.substitute(&m1).is_zero());
    let ruling_two_outside = c.ideal.gens.iter().any(|g| !g.substitute(&m2).is_zero());

    // bilinear conditions l(x ^ y) = 0, as a matrix of linear forms in x acting on y
    let (rows, _) = c.linear_system()?;
    let mut rank_drop_is_quadric = false;
    if rows.len() == 3 {
        let k: Vec<Vec<CPoly>> = rows
            .iter()
            .map(|row| {
                let mut out = vec![CPoly::zero(4); 4];
                for (idx, &(i, j)) in PLUECKER_PAIRS.iter().enumerate() {
                    let xi = CPoly::var(4, i).scale(&row[idx]);
                    let xj = CPoly::var(4, j).scale(&row[idx]);
                    out[j] = out[j].add(&xi);
                    out[i] = out[i].sub(&xj);
                }
                out
            })
            .collect();
        let mut quotients: Vec<CPoly> = Vec::new();
        let mut divisible = true;
        for cols in combinations(4, 3) {
            let sub: Vec<Vec<CPoly>> = k.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
            let d = poly_det(&sub, 4);
            if d.is_zero() {
                continue;
            }
            match d.div_exact(&qr.quadric) {
                Some(q) => quotients.push(q),
                None => divisible = false,
            }
        }
        let independent = quotients
            .iter()
            .any(|a| quotients.iter().any(|b| !proportional(a, b)));
        rank_drop_is_quadric = divisible && independent;
    }
    Ok(RulingReport {
        lines_on_quadric,
        quadric_matches_ruling,
        ruling_one_in_component,
        ruling_two_outside,
        rank_drop_is_quadric,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointLines {
    pub component: String,
    /// Dimension of the family of lines through the point in this component.
    pub family_dimension: usize,
    /// The line, when the family is a single line.
    pub line: Option<PlueckerPoint>,
}

/// Lines through p in each component. Membership of p ^ q in a component cut out
/// by linear forms (and P) is linear in q.
pub fn lines_through_point(p: &ProjPoint, comps: &[SchemeComponent]) -> Result<Vec<PointLines>> {
    let pc = p.coords();
    let mut out = Vec::new();
    for c in comps {
        let (rows, _) = c.linear_system()?;
        let cond: Vec<Vec<FieldValue>> = rows
            .iter()
            .map(|row| {
                let mut v = vec![FieldValue::zero(); 4];
                for (idx, &(i, j)) in PLUECKER_PAIRS.iter().enumerate() {
                    v[j] += &(&row[idx] * &pc[i]);
                    v[i] -= &(&row[idx] * &pc[j]);
                }
                v
            })
            .collect();
        let kernel = if cond.is_empty() {
            Matrix::identity(4).data
        } else {
            mat(cond).kernel()
        };
        if kernel.len() < 2 {
            continue;
        }
        let line = if kernel.len() == 2 {
            let q = kernel
                .iter()
                .find(|v| rank_of(&[pc, v]) == 2)
                .expect("kernel contains p");
            Some(PlueckerPoint::new(wedge(pc, q))?)
        } else {
            None
        };
        out.push(PointLines {
            component: c.label.clone(),
            family_dimension: kernel.len() - 2,
            line,
        });
    }
    Ok(out)
}

/// Group isolated lines by Plücker point, listing the components containing each.
pub fn distinct_lines(sols: &[PointLines]) -> Vec<(PlueckerPoint, Vec<String>)> {
    let mut out: Vec<(PlueckerPoint, Vec<String>)> = Vec::new();
    for s in sols {
        let Some(l) = &s.line else { continue };
        match out.iter_mut().find(|(m, _)| m == l) {
            Some((_, labels)) => labels.push(s.component.clone()),
            None => out.push((l.clone(), vec![s.component.clone()])),
        }
    }
    out
}

/// Labels of the components whose ideal vanishes at m.
pub fn components_containing(m: &PlueckerPoint, comps: &[SchemeComponent]) -> Vec<String> {
    comps
        .iter()
        .filter(|c| c.ideal.gens.iter().all(|g| g.eval(m.coords()).is_zero()))
        .map(|c| c.label.clone())
        .collect()
}

/// The listed points that lie on l.
pub fn points_on_line(l: &LineInP3, points: &[ProjPoint]) -> Vec<ProjPoint> {
    points.iter().filter(|p| l.contains(p)).cloned().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LineMeets {
    Points(Vec<ProjPoint>),
    /// l coincides with the named component line.
    Contained(String),
}

/// Intersect l with each of a list of lines by linear algebra.
pub fn points_on_line_in_lines(l: &LineInP3, lines: &[(String, LineInP3)]) -> LineMeets {
    let [a, b] = l.rows();
    let mut pts: Vec<ProjPoint> = Vec::new();
    for (name, e) in lines {
        let [c, d] = e.rows();
        if rank_of(&[a, b, c, d]) == 2 {
            return LineMeets::Contained(name.clone());
        }
        let m = mat(
            (0..4)
                .map(|i| vec![a[i].clone(), b[i].clone(), -&c[i], -&d[i]])
                .collect(),
        );
        for k in m.kernel() {
            let p: Vec<FieldValue> = (0..4).map(|i| &(&k[0] * &a[i]) + &(&k[1] * &b[i])).collect();
            if let Ok(p) = ProjPoint::new(p) {
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
        }
    }
    LineMeets::Points(pts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionEntry {
    pub first: String,
    pub second: String,
    pub lines: Vec<PlueckerPoint>,
    /// The intersection contains a positive-dimensional family.
    pub positive_dimensional: bool,
    /// False when a quadratic had roots outside Q(zeta8).
    pub complete: bool,
}

fn combine(k: &[Vec<FieldValue>], lam: &FieldValue, mu: &FieldValue) -> Vec<FieldValue> {
    (0..6).map(|i| &(lam * &k[0][i]) + &(mu * &k[1][i])).collect()
}

/// Pairwise intersections of components cut out by linear forms and P; empty pairs are omitted.
pub fn component_intersections(comps: &[SchemeComponent]) -> Result<Vec<IntersectionEntry>> {
    let systems = comps.iter().map(|c| c.linear_system()).collect::<Result<Vec<_>>>()?;
    let p = pluecker_poly();
    let mut out = Vec::new();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let mut rows = systems[i].0.clone();
            rows.extend(systems[j].0.iter().cloned());
            let k = mat(rows).kernel();
            let mut entry = IntersectionEntry {
                first: comps[i].label.clone(),
                second: comps[j].label.clone(),
                lines: Vec::new(),
                positive_dimensional: false,
                complete: true,
            };
            match k.len() {
                0 => {}
                1 => {
                    if p.eval(&k[0]).is_zero() {
                        entry.lines.push(PlueckerPoint::new(k[0].clone())?);
                    }
                }
                2 => {
                    let one = FieldValue::one();
                    let zero = FieldValue::zero();
                    let a = p.eval(&k[0]);
                    let c = p.eval(&k[1]);
                    let b = &(&p.eval(&combine(&k, &one, &one)) - &a) - &c;
                    let mut roots: Vec<(FieldValue, FieldValue)> = Vec::new();
                    if a.is_zero() && b.is_zero() && c.is_zero() {
                        entry.positive_dimensional = true;
                    } else if a.is_zero() {
                        // mu (b lam + c mu) = 0
                        roots.push((one.clone(), zero.clone()));
                        if !b.is_zero() {
                            roots.push((-&c, b.clone()));
                        }
                    } else {
                        let disc = &(&b * &b) - &(&(&FieldValue::from_int(4) * &a) * &c);
                        match disc.sqrt() {
                            Some(r) => {
                                let two_a = &FieldValue::from_int(2) * &a;
                                roots.push((&(-&b) + &r, two_a.clone()));
                                if !r.is_zero() {
                                    roots.push((&(-&b) - &r, two_a));
                                }
                            }
                            None => entry.complete = false,
                        }
                    }
                    for (lam, mu) in roots {
                        let m = PlueckerPoint::new(combine(&k, &lam, &mu))?;
                        if !entry.lines.contains(&m) {
                            entry.lines.push(m);
                        }
                    }
                }
                _ => entry.positive_dimensional = true,
            }
            if !entry.lines.is_empty() || entry.positive_dimensional || !entry.complete {
                out.push(entry);
            }
        }
    }
    Ok(out)
}

/// "l(a,b)" when exactly two named points lie on the line, else its Plücker vector.
pub fn line_label(m: &PlueckerPoint, named: &[(String, ProjPoint)]) -> String {
    let Ok(l) = LineInP3::from_pluecker(m) else {
        return m.to_string();
    };
    let on: Vec<&str> = named.iter().filter(|(_, p)| l.contains(p)).map(|(n, _)| n.as_str()).collect();
    if on.len() == 2 {
        format!("l({},{})", on[0], on[1])
    } else {
        m.to_string()
    }
}

/// Lines that pass through at least one named point and lie in the components,
/// each with its containing components and the named points on it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceLine {
    pub line: PlueckerPoint,
    pub components: Vec<String>,
    pub points: Vec<String>,
}

pub fn incidence_lines(named: &[(String, ProjPoint)], comps: &[SchemeComponent]) -> Result<Vec<IncidenceLine>> {
    let mut lines: Vec<PlueckerPoint> = Vec::new();
    for (_, p) in named {
        for (m, _) in distinct_lines(&lines_through_point(p, comps)?) {
            if !lines.contains(&m) {
                lines.push(m);
            }
        }
    }
    lines
        .into_iter()
        .map(|m| {
            let l = LineInP3::from_pluecker(&m)?;
            Ok(IncidenceLine {
                components: components_containing(&m, comps),
                points: named.iter().filter(|(_, p)| l.contains(p)).map(|(n, _)| n.clone()).collect(),
                line: m,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::parse_presentation;

    fn fv(k: i64) -> FieldValue {
        FieldValue::from_int(k)
    }

    fn s_pts() -> Presentation {
        parse_presentation(include_str!("../data/S_points.alg")).unwrap()
    }

    fn m_text(p: &Presentation) -> Vec<Vec<String>> {
        relation_matrix(p).unwrap().to_text(&x_names(4))
    }

    #[test]
    fn relation_matrix_of_s_and_r() {
        let s = m_text(&s_pts());
        assert_eq!(s[0], ["0", "x1", "-x3", "0"]);
        assert_eq!(s[1], ["x2", "0", "0", "-x4"]);
        assert_eq!(s[5], ["-x4", "x3", "0", "0"]);
        let r = m_text(&parse_presentation(include_str!("../data/R_YZ.alg")).unwrap());
        assert_eq!(r[0], ["x2", "x1", "0", "0"]);
        assert_eq!(r[2], ["0", "-x3", "0", "x1"]);
        let free = Presentation::free(&["a", "b"]);
        assert!(relation_matrix(&free).is_err());
    }

    #[test]
    fn poly_det_matches_numeric_det() {
        // entries x_i + j, evaluated at a point, against the numeric determinant
        let n = 3;
        let m: Vec<Vec<CPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| CPoly::var(2, (i + j) % 2).add(&CPoly::constant(2, fv((i * j) as i64 + 1))))
                    .collect()
            })
            .collect();
        let pt = [fv(2), fv(-3)];
        let num = mat(m.iter().map(|r| r.iter().map(|e| e.eval(&pt)).collect()).collect());
        assert_eq!(poly_det(&m, 2).eval(&pt), num.determinant().unwrap());
    }

    #[test]
    fn orthogonality_gives_kernel_line() {
        // V(f, g) computed directly against the orthogonality image of f ^ g
        let f: Vec<FieldValue> = [1, 2, -1, 3].iter().map(|&k| fv(k)).collect();
        let g: Vec<FieldValue> = [0, 1, 4, -2].iter().map(|&k| fv(k)).collect();
        let direct = pluecker_embed(&LineInP3::cut_out_by(&f, &g).unwrap());
        let n = wedge(&f, &g);
        let img: Vec<FieldValue> = orthogonality_map(6, 0).iter().map(|h| h.eval(&n)).collect();
        assert_eq!(PlueckerPoint::new(img).unwrap(), direct);
    }

    #[test]
    fn pluecker_basics() {
        let l14 = LineInP3::through(&e_point(1), &e_point(4)).unwrap();
        assert_eq!(pluecker_embed(&l14).coords(), &[fv(0), fv(0), fv(1), fv(0), fv(0), fv(0)]);
        let l23 = LineInP3::through(&e_point(2), &e_point(3)).unwrap();
        assert_eq!(pluecker_embed(&l23).coords(), &[fv(0), fv(0), fv(0), fv(1), fv(0), fv(0)]);
        let a: Vec<FieldValue> = [1, 2, 3, 4].iter().map(|&k| fv(k)).collect();
        let b: Vec<FieldValue> = [0, 1, -1, 5].iter().map(|&k| fv(k)).collect();
        let c: Vec<FieldValue> = (0..4).map(|i| &(&a[i] * &fv(3)) + &b[i]).collect();
        let l1 = LineInP3::new(&a, &b).unwrap();
        let l2 = LineInP3::new(&c, &a).unwrap();
        assert_eq!(l1, l2);
        let m = pluecker_embed(&l1);
        assert!(m.satisfies_pluecker());
        assert_eq!(LineInP3::from_pluecker(&m).unwrap(), l1);
        assert!(LineInP3::new(&a, &a).is_err());
    }

    #[test]
    fn s_point_scheme_and_tau() {
        let m = relation_matrix(&s_pts()).unwrap();
        let ideal = point_scheme_ideal(&m).unwrap();
        assert_eq!(ideal.gens.len(), 15);
        let h = ideal.hilbert_data(8).unwrap();
        assert_eq!((h.projective_dimension, h.degree), (Some(0), 20));
        let pts = s_points();
        for (_, p) in &pts {
            assert!(ideal.gens.iter().all(|g| g.eval(p.coords()).is_zero()));
        }
        for j in 0..4 {
            for k in 0..4 {
                let t = verify_point_and_tau(&p_point(j, k), &m).unwrap();
                assert_eq!(t.tau, Some(p_point(2 * k - j, k - j)));
            }
        }
        let ones = ProjPoint::from_ints(&[1, 1, 1, 1]).unwrap();
        assert_eq!(verify_point_and_tau(&ones, &m).unwrap().tau, Some(ones));
        let off = verify_point_and_tau(&ProjPoint::from_ints(&[1, 1, 1, 0]).unwrap(), &m).unwrap();
        assert!(!off.is_point);
        let mut sizes: Vec<usize> = tau_orbits(&pts, &m).unwrap().iter().map(|o| o.len()).collect();
        sizes.sort();
        assert_eq!(sizes, [1, 1, 1, 1, 2, 2, 4, 4, 4]);
    }
}
