//! Group gradings on presentations: homogeneity, relation synthesis from a
//! grade table, identity components, covariant rings, and the search for
//! dual reflection groups.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::FieldValue;
use crate::groups16::{cyclotomic_factorization, FiniteGroup, IntPolynomial};
use crate::linalg::{Echelon, SparseVec};
use crate::ncgroebner::{complete, times_one_minus_tk, NCGroebnerBasis};
use crate::presentations::{relation_span_equal, word, NCPoly, Presentation, Word};

/// Group grades of the generators of a presentation.
#[derive(Clone, Debug)]
pub struct GradeAssignment {
    pub group: FiniteGroup,
    pub grades: Vec<usize>,
}

impl GradeAssignment {
    pub fn new(group: FiniteGroup, grades: Vec<usize>) -> Result<Self> {
        if grades.iter().any(|&g| g == group.identity()) {
            return Err(Error::Invalid("a generator cannot have the identity grade".into()));
        }
        if grades.iter().any(|&g| g >= group.order()) {
            return Err(Error::Invalid("grade out of range".into()));
        }
        if !group.generates(&grades) {
            return Err(Error::NotGenerating);
        }
        Ok(GradeAssignment { group, grades })
    }

    pub fn from_words(group: FiniteGroup, words: &[&str]) -> Result<Self> {
        let grades = words.iter().map(|w| group.resolve(w)).collect::<Result<Vec<_>>>()?;
        GradeAssignment::new(group, grades)
    }

    pub fn word_grade(&self, w: &[u8]) -> usize {
        w.iter()
            .fold(self.group.identity(), |acc, &x| self.group.mul(acc, self.grades[x as usize]))
    }

    /// Entry (i, j) is grade(x_i) grade(x_j).
    pub fn grade_table(&self) -> Vec<Vec<usize>> {
        self.grades
            .iter()
            .map(|&a| self.grades.iter().map(|&b| self.group.mul(a, b)).collect())
            .collect()
    }

    pub fn grade_names(&self) -> Vec<String> {
        self.grades.iter().map(|&g| self.group.describe(g)).collect()
    }

    /// The generating set: distinct grades in first-occurrence order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for &g in &self.grades {
            if !out.contains(&g) {
                out.push(g);
            }
        }
        out
    }
}

/// Grade of a homogeneous polynomial, or `None` if its words disagree.
pub fn poly_grade(f: &NCPoly, ga: &GradeAssignment) -> Option<usize> {
    let mut grades = f.terms.keys().map(|w| ga.word_grade(w));
    let first = grades.next()?;
    grades.all(|g| g == first).then_some(first)
}

pub fn check_homogeneous(p: &Presentation, ga: &GradeAssignment) -> bool {
    ga.grades.len() == p.ngens() && p.relations.iter().all(|r| r.is_zero() || poly_grade(r, ga).is_some())
}

/// Grades of the relations, when the presentation is homogeneous.
pub fn relation_grades(p: &Presentation, ga: &GradeAssignment) -> Option<Vec<usize>> {
    if ga.grades.len() != p.ngens() {
        return None;
    }
    p.relations.iter().map(|r| poly_grade(r, ga)).collect()
}

fn standard_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Pairs of degree-two products sharing a non-identity grade, chained in
/// row-major table order. Each pair (p, q) becomes a relation p - lambda q.
pub fn binomial_pairs(ga: &GradeAssignment) -> Vec<(Word, Word)> {
    let n = ga.grades.len();
    let mut by_grade: Vec<(usize, Vec<Word>)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let g = ga.group.mul(ga.grades[i], ga.grades[j]);
            if g == ga.group.identity() {
                continue;
            }
            let w = word(&[i as u8, j as u8]);
            match by_grade.iter_mut().find(|(h, _)| *h == g) {
                Some((_, v)) => v.push(w),
                None => by_grade.push((g, vec![w])),
            }
        }
    }
    let mut out = Vec::new();
    for (_, ws) in by_grade {
        for k in 1..ws.len() {
            out.push((ws[k - 1].clone(), ws[k].clone()));
        }
    }
    out
}

/// One presentation per choice of coefficient vector.
pub fn synthesize_relations(ga: &GradeAssignment, coeffs: &[FieldValue]) -> Result<Vec<Presentation>> {
    if coeffs.is_empty() {
        return Err(Error::Invalid("coefficient set is empty".into()));
    }
    let pairs = binomial_pairs(ga);
    let n = ga.grades.len();
    let total = (coeffs.len() as u64)
        .checked_pow(pairs.len() as u32)
        .ok_or_else(|| Error::Resource("too many coefficient choices".into()))?;
    let mut out = Vec::new();
    for idx in 0..total {
        let mut k = idx;
        let mut rels = Vec::new();
        // the first pair varies slowest
        let mut choice = vec![0usize; pairs.len()];
        for slot in choice.iter_mut().rev() {
            *slot = (k % coeffs.len() as u64) as usize;
            k /= coeffs.len() as u64;
        }
        for ((p, q), &c) in pairs.iter().zip(&choice) {
            let mut f = NCPoly::monomial(p.clone(), FieldValue::one());
            f.add_term(q.clone(), &-&coeffs[c]);
            rels.push(f);
        }
        let pres = Presentation::new(standard_names(n), rels)?;
        debug_assert!(check_homogeneous(&pres, ga));
        out.push(pres);
    }
    Ok(out)
}

/// Relabel generators: generator `k` of the input becomes generator `perm[k]`.
pub fn permute_generators(p: &Presentation, perm: &[usize]) -> Result<Presentation> {
    let images: Vec<NCPoly> = perm.iter().map(|&k| NCPoly::var(k)).collect();
    let rels = p.relations.iter().map(|r| r.substitute(&images)).collect();
    Presentation::new(p.names.clone(), rels)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// A generator permutation taking `p` to a presentation span-equal to `q`.
pub fn span_equal_up_to_relabeling(p: &Presentation, q: &Presentation) -> Option<Vec<usize>> {
    if p.ngens() != q.ngens() {
        return None;
    }
    permutations(p.ngens()).into_iter().find(|perm| {
        permute_generators(p, perm)
            .map(|pp| relation_span_equal(&pp, q))
            .unwrap_or(false)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Commutation {
    Commute,
    Anticommute,
    Neither,
    /// The product lies beyond the completion bound.
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityComponentReport {
    pub hilbert: Vec<u64>,
    pub generators: Vec<String>,
    pub generator_degrees: Vec<u32>,
    /// (i, j, relation) for i < j.
    pub commutation: Vec<(usize, usize, Commutation)>,
    #[serde(skip)]
    pub generator_polys: Vec<NCPoly>,
}

impl IdentityComponentReport {
    pub fn all_commute(&self) -> bool {
        self.commutation.iter().all(|c| c.2 == Commutation::Commute)
    }

    pub fn relation(&self, i: usize, j: usize) -> Option<Commutation> {
        let (a, b) = (i.min(j), i.max(j));
        self.commutation.iter().find(|c| c.0 == a && c.1 == b).map(|c| c.2)
    }
}

fn poly_coords(gb: &NCGroebnerBasis, f: &NCPoly, index: &BTreeMap<Word, usize>) -> Result<SparseVec> {
    let nf = gb.normal_form(f)?;
    let mut v: SparseVec = nf.terms.iter().map(|(w, c)| (index[w], c.clone())).collect();
    v.sort_by_key(|x| x.0);
    Ok(v)
}

fn natural_lex(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.as_slice().cmp(b.as_slice())
}

pub fn identity_component_report(
    gb: &NCGroebnerBasis,
    ga: &GradeAssignment,
    max_deg: u32,
) -> Result<IdentityComponentReport> {
    if !gb.covers(max_deg) {
        return Err(Error::BoundExceeded { requested: max_deg, available: gb.complete_through });
    }
    let p = &gb.source;
    let e = ga.group.identity();
    let mut hilbert = vec![1u64];
    let mut gens: Vec<(NCPoly, u32)> = Vec::new();
    let mut gen_words: Vec<Word> = Vec::new();
    // span of the generated subalgebra in each degree, as normal forms
    let mut sub: Vec<Vec<NCPoly>> = vec![vec![NCPoly::one()]];
    for d in 1..=max_deg {
        let words = gb.standard_monomials(d)?;
        let index: BTreeMap<Word, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut grade_e: Vec<Word> = words.iter().filter(|w| ga.word_grade(w) == e).cloned().collect();
        grade_e.sort_by(natural_lex);
        hilbert.push(grade_e.len() as u64);
        let mut ech = Echelon::new();
        let mut basis: Vec<NCPoly> = Vec::new();
        for (y, dy) in &gens {
            if *dy > d {
                continue;
            }
            for s in &sub[(d - dy) as usize] {
                let f = gb.normal_form(&y.mul(s))?;
                if ech.insert(&poly_coords(gb, &f, &index)?) {
                    basis.push(f);
                }
            }
        }
        for w in grade_e {
            let f = NCPoly::monomial(w.clone(), FieldValue::one());
            if ech.insert(&poly_coords(gb, &f, &index)?) {
                basis.push(f.clone());
                gens.push((f, d));
                gen_words.push(w);
            }
        }
        sub.push(basis);
    }
    let mut commutation = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let (a, b) = (&gens[i].0, &gens[j].0);
            let dd = gens[i].1 + gens[j].1;
            if !gb.covers(dd) {
                commutation.push((i, j, Commutation::Undetermined));
                continue;
            }
            let ab = a.mul(b);
            let ba = b.mul(a);
            let rel = if gb.reduces_to_zero(&ab.sub(&ba))? {
                Commutation::Commute
            } else if gb.reduces_to_zero(&ab.add(&ba))? {
                Commutation::Anticommute
            } else {
                Commutation::Neither
            };
            commutation.push((i, j, rel));
        }
    }
    Ok(IdentityComponentReport {
        hilbert,
        generators: gens.iter().map(|(f, _)| p.poly_text(f)).collect(),
        generator_degrees: gens.iter().map(|g| g.1).collect(),
        commutation,
        generator_polys: gens.into_iter().map(|g| g.0).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FreeModuleCertificate {
    pub certified: bool,
    pub quotient_hilbert: Vec<u64>,
    pub expected: Vec<i64>,
    pub first_mismatch: Option<u32>,
    pub coset_basis: Vec<String>,
    pub rank: u64,
}

/// Compare H_{A/<Y>} with prod (1 - t^{d_i}) H_A through `max_deg`.
pub fn free_module_certificate(
    gb: &NCGroebnerBasis,
    ys: &[NCPoly],
    max_deg: u32,
) -> Result<FreeModuleCertificate> {
    let p = &gb.source;
    let h = gb.hilbert_function(max_deg)?;
    let mut expected: Vec<i64> = h.values.iter().map(|&v| v as i64).collect();
    for y in ys {
        expected = times_one_minus_tk(&expected, y.degree(&p.degrees) as usize);
    }
    let q = p.quotient(ys)?;
    let qgb = complete(&q, max_deg);
    let qh = qgb.hilbert_function(max_deg)?;
    let first_mismatch = qh
        .values
        .iter()
        .zip(&expected)
        .position(|(&a, &b)| a as i64 != b)
        .map(|d| d as u32);
    let mut coset_basis = Vec::new();
    for d in 0..=max_deg {
        for w in qgb.standard_monomials(d)? {
            coset_basis.push(p.poly_text(&NCPoly::monomial(w, FieldValue::one())));
        }
    }
    let vanished = qh.values.last() == Some(&0);
    Ok(FreeModuleCertificate {
        certified: first_mismatch.is_none() && vanished,
        rank: qh.total(),
        quotient_hilbert: qh.values,
        expected,
        first_mismatch,
        coset_basis,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CovariantReport {
    pub hilbert: Vec<u64>,
    pub poincare: Vec<i64>,
    pub matches: bool,
}

/// Hilbert function of A / A (A_e)_{>=1} against the Poincare polynomial of `gens`.
pub fn covariant_hilbert_check(
    gb: &NCGroebnerBasis,
    ga: &GradeAssignment,
    gens: &[usize],
    max_deg: u32,
) -> Result<CovariantReport> {
    let poincare = ga.group.poincare_polynomial(gens)?;
    let e = ga.group.identity();
    let mut extra = Vec::new();
    for d in 1..=max_deg {
        for w in gb.standard_monomials(d)? {
            if ga.word_grade(&w) == e {
                extra.push(NCPoly::monomial(w, FieldValue::one()));
            }
        }
    }
    let q = gb.source.quotient(&extra)?;
    let qgb = complete(&q, max_deg);
    let h = qgb.hilbert_function(max_deg)?;
    let mut pc = poincare.0.clone();
    pc.resize(max_deg as usize + 1, 0);
    let matches = h.values.iter().zip(&pc).all(|(&a, &b)| a as i64 == b) && poincare.0.len() <= max_deg as usize + 1;
    Ok(CovariantReport { hilbert: h.values, poincare: poincare.0, matches })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SubsetMode {
    /// Distinct generator grades.
    Sets,
    /// Grades may repeat.
    Multisets,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub n: usize,
    pub depth: u32,
    pub coeffs: Vec<FieldValue>,
    pub mode: SubsetMode,
    /// Reduce generating sets up to simultaneous conjugation.
    pub up_to_conjugacy: bool,
    pub max_candidates: usize,
    pub include_rejected: bool,
}

impl SearchOptions {
    pub fn new(n: usize, depth: u32, coeffs: Vec<FieldValue>) -> Self {
        SearchOptions {
            n,
            depth,
            coeffs,
            mode: SubsetMode::Sets,
            up_to_conjugacy: true,
            max_candidates: 200_000,
            include_rejected: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub relations: Vec<String>,
    pub grades: Vec<String>,
    pub coefficients: Vec<String>,
    pub hilbert: Vec<u64>,
    pub identity_component: Option<IdentityComponentReport>,
    pub verdict: String,
    #[serde(skip)]
    pub presentation: Presentation,
    #[serde(skip)]
    pub grade_elements: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratingSetReport {
    pub generating_set: Vec<String>,
    pub poincare: Vec<i64>,
    pub poincare_factorization: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub group: String,
    pub n: usize,
    pub depth: u32,
    pub rejected: Option<String>,
    pub generating_sets_examined: usize,
    pub cyclotomic_sets: Vec<GeneratingSetReport>,
    pub candidates_screened: usize,
    pub candidates: Vec<CandidateReport>,
}

fn combinations(pool: &[usize], k: usize, repeat: bool) -> Vec<Vec<usize>> {
    fn rec(pool: &[usize], k: usize, start: usize, repeat: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            rec(pool, k, if repeat { i } else { i + 1 }, repeat, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, k, 0, repeat, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn screen(
    pres: Presentation,
    ga: &GradeAssignment,
    coeffs: Vec<String>,
    depth: u32,
) -> Result<CandidateReport> {
    let n = ga.grades.len() as u64;
    let gb = complete(&pres, depth);
    let hilbert = gb.hilbert_function(depth)?.values;
    let poly_ok = hilbert
        .iter()
        .enumerate()
        .all(|(d, &h)| h == binomial(d as u64 + n - 1, n - 1));
    let mut verdict = String::from("survivor");
    let mut idc = None;
    if !poly_ok {
        let d = hilbert
            .iter()
            .enumerate()
            .position(|(d, &h)| h != binomial(d as u64 + n - 1, n - 1))
            .unwrap();
        verdict = format!("rejected: Hilbert function differs in degree {d}");
    } else {
        let report = identity_component_report(&gb, ga, depth.min(4))?;
        // free-module identity: H_{A_e} p(t) = H_A(t) through the bound
        let poincare = ga.group.poincare_polynomial(&ga.generating_set())?;
        let limit = depth.min(4) as usize;
        for d in 0..=limit {
            let conv: i64 = (0..=d)
                .map(|k| report.hilbert[k] as i64 * poincare.0.get(d - k).copied().unwrap_or(0))
                .sum();
            if conv != hilbert[d] as i64 {
                verdict = format!("rejected: identity component fails the free-module identity in degree {d}");
                break;
            }
        }
        idc = Some(report);
    }
    Ok(CandidateReport {
        relations: pres.relations.iter().map(|r| pres.poly_text(r)).collect(),
        grades: ga.grade_names(),
        coefficients: coeffs,
        hilbert,
        identity_component: idc,
        verdict,
        presentation: pres,
        grade_elements: ga.grades.clone(),
    })
}

pub fn search_dual_reflection(group: &FiniteGroup, opts: &SearchOptions) -> Result<SearchReport> {
    let mut report = SearchReport {
        group: group.name.clone(),
        n: opts.n,
        depth: opts.depth,
        rejected: None,
        generating_sets_examined: 0,
        cyclotomic_sets: Vec::new(),
        candidates_screened: 0,
        candidates: Vec::new(),
    };
    if group.is_abelian() {
        report.rejected = Some("abelian group".into());
        return Ok(report);
    }
    if opts.n > 6 || group.order() > 32 {
        return Err(Error::Resource("search is limited to n <= 6 and |G| <= 32".into()));
    }
    let pool: Vec<usize> = (0..group.order()).filter(|&g| g != group.identity()).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut jobs: Vec<(GradeAssignment, Presentation, Vec<String>)> = Vec::new();
    for subset in combinations(&pool, opts.n, opts.mode == SubsetMode::Multisets) {
        let support: Vec<usize> = subset.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if !group.generates(&support) {
            continue;
        }
        if opts.up_to_conjugacy {
            let canon = (0..group.order())
                .map(|g| {
                    let mut c: Vec<usize> = subset.iter().map(|&x| group.conjugate(g, x)).collect();
                    c.sort_unstable();
                    c
                })
                .min()
                .unwrap();
            if !seen.insert(canon) {
                continue;
            }
        }
        report.generating_sets_examined += 1;
        let poincare = group.poincare_polynomial(&support)?;
        let Some(fact) = cyclotomic_factorization(&poincare) else {
            continue;
        };
        report.cyclotomic_sets.push(GeneratingSetReport {
            generating_set: support.iter().map(|&g| group.describe(g)).collect(),
            poincare: poincare.0.clone(),
            poincare_factorization: fact,
        });
        let ga = GradeAssignment::new(group.clone(), subset.clone())?;
        let pairs = binomial_pairs(&ga).len();
        let count = (opts.coeffs.len() as u64).saturating_pow(pairs as u32) as usize;
        if jobs.len() + count > opts.max_candidates {
            return Err(Error::Resource(format!(
                "more than {} candidates; raise the candidate budget",
                opts.max_candidates
            )));
        }
        for (k, pres) in synthesize_relations(&ga, &opts.coeffs)?.into_iter().enumerate() {
            let mut idx = k;
            let mut cs = vec![String::new(); pairs];
            for slot in cs.iter_mut().rev() {
                *slot = opts.coeffs[idx % opts.coeffs.len()].to_string();
                idx /= opts.coeffs.len();
            }
            jobs.push((ga.clone(), pres, cs));
        }
    }
    report.candidates_screened = jobs.len();
    let results: Vec<Result<CandidateReport>> = jobs
        .into_par_iter()
        .map(|(ga, pres, cs)| screen(pres, &ga, cs, opts.depth))
        .collect();
    for r in results {
        let c = r?;
        if opts.include_rejected || c.verdict == "survivor" {
            report.candidates.push(c);
        }
    }
    Ok(report)
}

/// Poincare polynomial of a grade assignment's generating set, factored.
pub fn poincare_report(ga: &GradeAssignment) -> Result<(IntPolynomial, Option<Vec<(usize, usize)>>)> {
    let p = ga.group.poincare_polynomial(&ga.generating_set())?;
    let f = cyclotomic_factorization(&p);
    Ok((p, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups16::{cyclic, m16, sd16};
    use crate::presentations::parse_presentation;

    const S: &str = include_str!("../data/S.alg");
    const T: &str = include_str!("../data/T.alg");
    const R: &str = include_str!("../data/R_original.alg");

    fn s_grades() -> GradeAssignment {
        GradeAssignment::from_words(sd16(), &["b", "bc", "ab", "abcd"]).unwrap()
    }

    fn r_grades() -> GradeAssignment {
        GradeAssignment::from_words(m16(), &["a", "acd", "ab", "abc"]).unwrap()
    }

    fn names(ga: &GradeAssignment, gs: &[usize]) -> Vec<String> {
        gs.iter().map(|&g| ga.group.describe(g)).collect()
    }

    #[test]
    fn r_table_matches_group_products() {
        let ga = r_grades();
        let table = ga.grade_table();
        let expect = [
            ["c", "e", "bc", "bd"],
            ["e", "cd", "b", "bc"],
            ["bcd", "bd", "cd", "e"],
            ["b", "bcd", "e", "c"],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(ga.group.describe(table[i][j]), expect[i][j]);
            }
        }
    }

    #[test]
    fn relation_grades_of_r_and_s() {
        let r = parse_presentation(R).unwrap();
        let ga = r_grades();
        assert!(check_homogeneous(&r, &ga));
        let g = relation_grades(&r, &ga).unwrap();
        assert_eq!(names(&ga, &g), ["c", "cd", "b", "bd", "bc", "bcd"]);
        let s = parse_presentation(S).unwrap();
        let ga = s_grades();
        let g = relation_grades(&s, &ga).unwrap();
        // listed in the order of the presentation file
        assert_eq!(names(&ga, &g), ["c", "cd", "acd", "ac", "a", "ad"]);
    }

    #[test]
    fn single_grade_is_not_homogeneous() {
        let s = parse_presentation(S).unwrap();
        let g = sd16();
        let a = g.resolve("a").unwrap();
        let ga = GradeAssignment { group: g, grades: vec![a; 4] };
        // oracle: evaluate a relation's word grades directly
        let direct = s.relations.iter().all(|r| {
            let gs: BTreeSet<usize> = r
                .terms
                .keys()
                .map(|w| w.iter().fold(ga.group.identity(), |acc, _| ga.group.mul(acc, a)))
                .collect();
            gs.len() == 1
        });
        assert_eq!(check_homogeneous(&s, &ga), direct);
    }

    #[test]
    fn synthesis_recovers_r_s_t() {
        let r = parse_presentation(R).unwrap();
        let ps = synthesize_relations(&r_grades(), &[FieldValue::one()]).unwrap();
        assert_eq!(ps.len(), 1);
        assert!(relation_span_equal(&ps[0], &r));
        let s = parse_presentation(S).unwrap();
        let t = parse_presentation(T).unwrap();
        let ps = synthesize_relations(&s_grades(), &[FieldValue::one()]).unwrap();
        assert!(relation_span_equal(&ps[0], &s));
        let pm = [FieldValue::one(), FieldValue::from_int(-1)];
        let ps = synthesize_relations(&s_grades(), &pm).unwrap();
        assert_eq!(ps.len(), 64);
        assert_eq!(ps.iter().filter(|p| relation_span_equal(p, &t)).count(), 1);
        assert!(ps.iter().all(|p| check_homogeneous(p, &s_grades())));
    }

    #[test]
    fn synthesis_commutes_with_relabeling() {
        let ga = s_grades();
        let perm = [2usize, 0, 3, 1];
        // new generator perm[k] carries the grade of old generator k
        let mut grades = vec![0; 4];
        for k in 0..4 {
            grades[perm[k]] = ga.grades[k];
        }
        let gb = GradeAssignment::new(ga.group.clone(), grades).unwrap();
        let a = synthesize_relations(&ga, &[FieldValue::one()]).unwrap();
        let b = synthesize_relations(&gb, &[FieldValue::one()]).unwrap();
        assert!(relation_span_equal(&permute_generators(&a[0], &perm).unwrap(), &b[0]));
    }

    #[test]
    fn identity_components() {
        let s = parse_presentation(S).unwrap();
        let gb = complete(&s, 6);
        let rep = identity_component_report(&gb, &s_grades(), 6).unwrap();
        assert_eq!(rep.generators, ["x1^2", "x2^2", "x3*x4", "x4*x3"]);
        assert!(rep.all_commute());
        // S_e is a polynomial ring on four degree-2 generators
        assert_eq!(rep.hilbert, [1, 0, 4, 0, 10, 0, 20]);
        let t = parse_presentation(T).unwrap();
        let gb = complete(&t, 6);
        let rep = identity_component_report(&gb, &s_grades(), 6).unwrap();
        assert_eq!(rep.generators, ["x1^2", "x2^2", "x3*x4", "x4*x3"]);
        for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
            assert_eq!(rep.relation(i, j), Some(Commutation::Anticommute), "{i} {j}");
        }
        for (i, j) in [(0, 3), (1, 2)] {
            assert_eq!(rep.relation(i, j), Some(Commutation::Commute));
        }
    }

    #[test]
    fn free_algebra_identity_component() {
        let g = m16();
        let ga = GradeAssignment::from_words(g, &["a", "b"]).unwrap();
        let p = Presentation::free(&["u", "v"]);
        let gb = complete(&p, 2);
        let rep = identity_component_report(&gb, &ga, 2).unwrap();
        // a^2 and b^2, ab, ba: which are trivial in M16?
        let expected: Vec<String> = [[0u8, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .filter(|w| ga.word_grade(*w) == ga.group.identity())
            .map(|w| p.poly_text(&NCPoly::monomial(word(&w[..]), FieldValue::one())))
            .collect();
        assert_eq!(rep.generators, expected);
    }

    #[test]
    fn free_module_certificates() {
        let s = parse_presentation(S).unwrap();
        let gb = complete(&s, 6);
        let rep = identity_component_report(&gb, &s_grades(), 4).unwrap();
        let cert = free_module_certificate(&gb, &rep.generator_polys, 6).unwrap();
        assert!(cert.certified);
        assert_eq!(cert.rank, 16);
        assert_eq!(cert.quotient_hilbert, [1, 4, 6, 4, 1, 0, 0]);
        assert!(cert.coset_basis.contains(&"x3^4".to_string()));
    }

    #[test]
    fn covariant_checks() {
        let s = parse_presentation(S).unwrap();
        let ga = s_grades();
        let gb = complete(&s, 6);
        let rep = covariant_hilbert_check(&gb, &ga, &ga.grades, 6).unwrap();
        assert!(rep.matches);
        assert_eq!(rep.hilbert, [1, 4, 6, 4, 1, 0, 0]);
    }

    #[test]
    fn abelian_rejected() {
        let g = cyclic(16).unwrap();
        let rep = search_dual_reflection(&g, &SearchOptions::new(4, 6, vec![FieldValue::one()])).unwrap();
        assert_eq!(rep.rejected.as_deref(), Some("abelian group"));
        assert!(rep.candidates.is_empty());
    }
}

#[cfg(test)]
mod search_tests {
    use super::*;
    use crate::groups16::{m16, sd16};
    use crate::presentations::parse_presentation;

    fn matches(rep: &SearchReport, target: &Presentation) -> usize {
        rep.candidates
            .iter()
            .filter(|c| span_equal_up_to_relabeling(&c.presentation, target).is_some())
            .count()
    }

    #[test]
    fn m16_search_finds_r() {
        let rep = search_dual_reflection(&m16(), &SearchOptions::new(4, 5, vec![FieldValue::one()])).unwrap();
        assert_eq!(rep.candidates.len(), 1);
        let r = parse_presentation(include_str!("../data/R_original.alg")).unwrap();
        assert!(matches(&rep, &r) >= 1);
    }

    #[test]
    fn sd16_search_finds_s_and_t() {
        let pm = vec![FieldValue::one(), FieldValue::from_int(-1)];
        let rep = search_dual_reflection(&sd16(), &SearchOptions::new(4, 5, pm)).unwrap();
        // every survivor uses one generating set, conjugate to the grades of S
        let sets: BTreeSet<Vec<String>> = rep.candidates.iter().map(|c| c.grades.clone()).collect();
        assert_eq!(sets.len(), 1);
        let s = parse_presentation(include_str!("../data/S.alg")).unwrap();
        let tt = parse_presentation(include_str!("../data/T.alg")).unwrap();
        assert!(matches(&rep, &s) >= 1);
        assert!(matches(&rep, &tt) >= 1);
    }
}
