//! Degree-bounded noncommutative Groebner bases (Bergman's diamond lemma).
//!
//! Completion works one degree at a time. At degree `d` the overlap
//! ambiguities of that degree and the input relations of that degree are
//! reduced by the rules found so far, then row reduced with the largest word
//! as pivot. The rows become the degree-`d` rules. Since every relation is
//! homogeneous this yields the reduced Groebner basis truncated at `d`.
//!
//! Internally words are stored with each letter replaced by its rank in the
//! variable priority, so comparing two words of equal degree and length is a
//! plain slice comparison.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::FieldValue;
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::presentations::{word_degree, NCPoly, Presentation, Word};

/// A rewriting rule `lead -> tail` (the relation `lead - tail` is monic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lead: Word,
    pub tail: NCPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFunction {
    pub values: Vec<u64>,
}

impl HilbertFunction {
    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }
}

#[derive(Clone, Debug)]
struct Rule {
    lead: Word,
    tail: Vec<(Word, FieldValue)>,
    degree: u32,
}

#[derive(Clone, Debug, Default)]
struct Trie {
    children: Vec<Vec<u32>>,
    terminal: Vec<Option<u32>>,
    width: usize,
}

impl Trie {
    fn new(width: usize) -> Self {
        Trie {
            children: vec![vec![u32::MAX; width]],
            terminal: vec![None],
            width,
        }
    }

    fn insert(&mut self, w: impl Iterator<Item = u8>, id: u32) {
        let mut node = 0usize;
        for c in w {
            let next = self.children[node][c as usize];
            node = if next == u32::MAX {
                self.children.push(vec![u32::MAX; self.width]);
                self.terminal.push(None);
                let n = self.children.len() - 1;
                self.children[node][c as usize] = n as u32;
                n
            } else {
                next as usize
            };
        }
        self.terminal[node] = Some(id);
    }

    /// Longest-first is irrelevant here: leads never contain each other.
    fn match_from(&self, w: impl Iterator<Item = u8>) -> Option<(u32, usize)> {
        let mut node = 0usize;
        for (k, c) in w.enumerate() {
            let next = self.children[node][c as usize];
            if next == u32::MAX {
                return None;
            }
            node = next as usize;
            if let Some(id) = self.terminal[node] {
                return Some((id, k + 1));
            }
        }
        None
    }
}

/// Ordering key: weighted degree, length, then rank-encoded letters.
type Key = (u32, usize, Word);

/// A truncated reduced Groebner basis of a presentation.
#[derive(Clone, Debug)]
pub struct NCGroebnerBasis {
    pub source: Presentation,
    pub degree_bound: u32,
    /// Every ambiguity of degree at most this resolves.
    pub complete_through: u32,
    /// True when no ambiguity above the bound remains, so the basis is complete in all degrees.
    pub finite: bool,
    rank_weights: Vec<u32>,
    rules: Vec<Rule>,
    trie: Trie,
    rev_trie: Trie,
    prefixes: HashMap<Word, Vec<u32>>,
    pending: BTreeMap<u32, Vec<(u32, u32, usize)>>,
    /// rank -> generator and generator -> rank
    to_gen: Vec<u8>,
    to_rank: Vec<u8>,
}

impl NCGroebnerBasis {
    fn empty(p: &Presentation) -> Self {
        let n = p.ngens();
        let to_rank = p.order.rank.clone();
        let to_gen: Vec<u8> = p.order.priority.iter().map(|&g| g as u8).collect();
        let rank_weights = to_gen.iter().map(|&g| p.degrees[g as usize]).collect();
        NCGroebnerBasis {
            source: p.clone(),
            degree_bound: 0,
            complete_through: 0,
            finite: false,
            rank_weights,
            rules: Vec::new(),
            trie: Trie::new(n),
            rev_trie: Trie::new(n),
            prefixes: HashMap::new(),
            pending: BTreeMap::new(),
            to_gen,
            to_rank,
        }
    }

    fn enc(&self, w: &[u8]) -> Word {
        w.iter().map(|&g| self.to_rank[g as usize]).collect()
    }

    fn dec(&self, w: &[u8]) -> Word {
        w.iter().map(|&r| self.to_gen[r as usize]).collect()
    }

    fn wdeg(&self, w: &[u8]) -> u32 {
        word_degree(w, &self.rank_weights)
    }

    fn key(&self, w: Word) -> Key {
        (self.wdeg(&w), w.len(), w)
    }

    fn enc_poly(&self, f: &NCPoly) -> Vec<(Word, FieldValue)> {
        f.terms.iter().map(|(w, c)| (self.enc(w), c.clone())).collect()
    }

    fn dec_poly(&self, t: &[(Word, FieldValue)]) -> NCPoly {
        NCPoly::from_terms(t.iter().map(|(w, c)| (self.dec(w), c.clone())))
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// Rules in generator indices, in the order found (by degree, then pivot order).
    pub fn rules(&self) -> Vec<RewriteRule> {
        self.rules
            .iter()
            .map(|r| RewriteRule {
                lead: self.dec(&r.lead),
                tail: self.dec_poly(&r.tail),
            })
            .collect()
    }

    /// The basis elements as monic polynomials `lead - tail`.
    pub fn elements(&self) -> Vec<NCPoly> {
        self.rules()
            .into_iter()
            .map(|r| NCPoly::monomial(r.lead, FieldValue::one()).sub(&r.tail))
            .collect()
    }

    pub fn leading_words(&self) -> Vec<Word> {
        self.rules.iter().map(|r| self.dec(&r.lead)).collect()
    }

    /// True if degree `d` lies within the certified range.
    pub fn covers(&self, d: u32) -> bool {
        self.finite || d <= self.complete_through
    }

    fn check(&self, d: u32) -> Result<()> {
        if self.covers(d) {
            Ok(())
        } else {
            Err(Error::BoundExceeded {
                requested: d,
                available: self.complete_through,
            })
        }
    }

    fn find_lead(&self, w: &[u8]) -> Option<(usize, u32)> {
        for s in 0..w.len() {
            if let Some((id, _)) = self.trie.match_from(w[s..].iter().copied()) {
                return Some((s, id));
            }
        }
        None
    }

    fn all_occurrences(&self, w: &[u8]) -> Vec<(usize, u32)> {
        (0..w.len())
            .filter_map(|s| self.trie.match_from(w[s..].iter().copied()).map(|(id, _)| (s, id)))
            .collect()
    }

    /// True if some lead word ends at the last letter of `w`.
    fn suffix_reducible(&self, w: &[u8]) -> bool {
        self.rev_trie.match_from(w.iter().rev().copied()).is_some()
    }

    /// Reduce rank-encoded terms to normal form. `choose` picks which occurrence to rewrite.
    fn reduce_enc(
        &self,
        terms: Vec<(Word, FieldValue)>,
        mut choose: Option<&mut dyn FnMut(usize) -> usize>,
    ) -> Vec<(Word, FieldValue)> {
        let mut work: BTreeMap<Key, FieldValue> = BTreeMap::new();
        for (w, c) in terms {
            add_key(&mut work, self.key(w), &c);
        }
        let mut out = Vec::new();
        while let Some(((_, _, w), c)) = work.pop_last() {
            let hit = match choose.as_mut() {
                None => self.find_lead(&w),
                Some(f) => {
                    let occ = self.all_occurrences(&w);
                    if occ.is_empty() {
                        None
                    } else {
                        Some(occ[f(occ.len()) % occ.len()])
                    }
                }
            };
            match hit {
                None => out.push((w, c)),
                Some((s, id)) => {
                    let r = &self.rules[id as usize];
                    let end = s + r.lead.len();
                    for (t, tc) in &r.tail {
                        let mut nw: Word = Word::from_slice(&w[..s]);
                        nw.extend_from_slice(t);
                        nw.extend_from_slice(&w[end..]);
                        add_key(&mut work, self.key(nw), &(&c * tc));
                    }
                }
            }
        }
        out
    }

    /// Normal form of `f` (no word of the result contains a lead word).
    pub fn normal_form(&self, f: &NCPoly) -> Result<NCPoly> {
        if let Some(&d) = f.degrees(&self.source.degrees).last() {
            self.check(d)?;
        }
        Ok(self.dec_poly(&self.reduce_enc(self.enc_poly(f), None)))
    }

    /// Normal form using an arbitrary reduction strategy (for confluence testing).
    pub fn normal_form_with_strategy(
        &self,
        f: &NCPoly,
        choose: &mut dyn FnMut(usize) -> usize,
    ) -> Result<NCPoly> {
        if let Some(&d) = f.degrees(&self.source.degrees).last() {
            self.check(d)?;
        }
        Ok(self.dec_poly(&self.reduce_enc(self.enc_poly(f), Some(choose))))
    }

    pub fn reduces_to_zero(&self, f: &NCPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    fn add_rule(&mut self, lead: Word, tail: Vec<(Word, FieldValue)>, degree: u32) {
        let id = self.rules.len() as u32;
        self.trie.insert(lead.iter().copied(), id);
        self.rev_trie.insert(lead.iter().rev().copied(), id);
        for k in 1..lead.len() {
            self.prefixes
                .entry(Word::from_slice(&lead[..k]))
                .or_default()
                .push(id);
        }
        self.rules.push(Rule { lead, tail, degree });
        // overlaps with every rule so far, in both directions
        let new = &self.rules[id as usize];
        let mut found = Vec::new();
        for (other_id, other) in self.rules.iter().enumerate() {
            let other_id = other_id as u32;
            // new as left factor
            found.extend(overlaps(&new.lead, &other.lead).map(|k| (id, other_id, k)));
            if other_id != id {
                found.extend(overlaps(&other.lead, &new.lead).map(|k| (other_id, id, k)));
            }
        }
        for (u, v, k) in found {
            let lu = &self.rules[u as usize].lead;
            let lv = &self.rules[v as usize].lead;
            let d = self.wdeg(lu) + self.wdeg(&lv[k..]);
            self.pending.entry(d).or_default().push((u, v, k));
        }
    }

    fn s_poly(&self, u: u32, v: u32, k: usize) -> Vec<(Word, FieldValue)> {
        let ru = &self.rules[u as usize];
        let rv = &self.rules[v as usize];
        let a = &ru.lead[..ru.lead.len() - k];
        let c = &rv.lead[k..];
        let mut out = Vec::with_capacity(ru.tail.len() + rv.tail.len());
        for (t, x) in &ru.tail {
            let mut w = t.clone();
            w.extend_from_slice(c);
            out.push((w, x.clone()));
        }
        for (t, x) in &rv.tail {
            let mut w = Word::from_slice(a);
            w.extend_from_slice(t);
            out.push((w, -x));
        }
        out
    }

    fn complete_degree(&mut self, d: u32) {
        let mut cands: Vec<Vec<(Word, FieldValue)>> = Vec::new();
        for r in &self.source.relations {
            if !r.is_zero() && r.degree(&self.source.degrees) == d {
                cands.push(self.enc_poly(r));
            }
        }
        if let Some(pairs) = self.pending.remove(&d) {
            for (u, v, k) in pairs {
                cands.push(self.s_poly(u, v, k));
            }
        }
        if cands.is_empty() {
            return;
        }
        let reduced: Vec<Vec<(Word, FieldValue)>> =
            cands.into_iter().map(|c| self.reduce_enc(c, None)).collect();
        // columns: words in decreasing order, so the pivot is the largest word
        let mut keys: Vec<Key> = reduced
            .iter()
            .flat_map(|t| t.iter().map(|(w, _)| self.key(w.clone())))
            .collect();
        keys.sort_unstable();
        keys.dedup();
        keys.reverse();
        let index: HashMap<&Word, usize> = keys.iter().enumerate().map(|(i, k)| (&k.2, i)).collect();
        let mut ech = Echelon::new();
        for t in &reduced {
            let row: SparseVec =
                crate::linalg::sparse_from_pairs(t.iter().map(|(w, c)| (index[w], c.clone())));
            ech.insert(&row);
        }
        let mut rows: Vec<SparseVec> = ech.rows().to_vec();
        rows.sort_by_key(|r| std::cmp::Reverse(r[0].0));
        for row in rows {
            let lead = keys[row[0].0].2.clone();
            let tail = row[1..]
                .iter()
                .map(|(i, c)| (keys[*i].2.clone(), -c))
                .collect();
            self.add_rule(lead, tail, d);
        }
    }

    /// Continue completion up to `bound`.
    pub fn extend_to(&mut self, bound: u32) {
        let start = self.degree_bound + 1;
        for d in start..=bound {
            self.complete_degree(d);
        }
        self.degree_bound = self.degree_bound.max(bound);
        self.complete_through = self.degree_bound;
        let max_rel = self
            .source
            .relations
            .iter()
            .map(|r| r.degree(&self.source.degrees))
            .max()
            .unwrap_or(0);
        self.finite = self.pending.is_empty() && max_rel <= self.degree_bound;
    }

    /// Lead words of rules of a given degree (decoded).
    pub fn rules_of_degree(&self, d: u32) -> Vec<RewriteRule> {
        self.rules
            .iter()
            .filter(|r| r.degree == d)
            .map(|r| RewriteRule {
                lead: self.dec(&r.lead),
                tail: self.dec_poly(&r.tail),
            })
            .collect()
    }

    fn enumerate_standard(&self, max_deg: u32, mut visit: impl FnMut(&[u8], u32)) {
        let n = self.to_gen.len();
        visit(&[], 0);
        // depth-first, children in increasing rank order
        fn dfs(
            gb: &NCGroebnerBasis,
            w: &mut Word,
            deg: u32,
            max_deg: u32,
            n: usize,
            visit: &mut dyn FnMut(&[u8], u32),
        ) {
            for r in 0..n as u8 {
                let nd = deg + gb.rank_weights[r as usize];
                if nd > max_deg {
                    continue;
                }
                w.push(r);
                if !gb.suffix_reducible(w) {
                    visit(w, nd);
                    dfs(gb, w, nd, max_deg, n, visit);
                }
                w.pop();
            }
        }
        dfs(self, &mut Word::new(), 0, max_deg, n, &mut visit);
    }

    /// Standard words of degree `d`, sorted increasingly in the monomial order.
    pub fn standard_monomials(&self, d: u32) -> Result<Vec<Word>> {
        self.check(d)?;
        let mut out: Vec<Word> = Vec::new();
        self.enumerate_standard(d, |w, deg| {
            if deg == d {
                out.push(Word::from_slice(w));
            }
        });
        out.sort_by(|a, b| self.key(a.clone()).cmp(&self.key(b.clone())));
        Ok(out.into_iter().map(|w| self.dec(&w)).collect())
    }

    pub fn hilbert_function(&self, max_deg: u32) -> Result<HilbertFunction> {
        self.check(max_deg)?;
        let mut values = vec![0u64; max_deg as usize + 1];
        self.enumerate_standard(max_deg, |_, deg| values[deg as usize] += 1);
        Ok(HilbertFunction { values })
    }

    /// Coordinates of a normal-form polynomial on a basis of standard words.
    fn coords(&self, f: &NCPoly, index: &HashMap<Word, usize>) -> SparseVec {
        crate::linalg::sparse_from_pairs(f.terms.iter().map(|(w, c)| (index[w], c.clone())))
    }

    fn index_of(words: &[Word]) -> HashMap<Word, usize> {
        words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect()
    }

    pub fn is_central(&self, z: &NCPoly) -> Result<bool> {
        let d = z.degree(&self.source.degrees);
        for i in 0..self.source.ngens() {
            let x = NCPoly::var(i);
            self.check(d + self.source.degrees[i])?;
            let comm = z.mul(&x).sub(&x.mul(z));
            if !self.normal_form(&comm)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Matrix of `f -> nf(left * f * right)` from `A_d` to `A_{d + shift}` in standard-word coordinates.
    fn multiplication_columns(
        &self,
        basis: &[Word],
        target_index: &HashMap<Word, usize>,
        left: &NCPoly,
        right: &NCPoly,
    ) -> Result<Vec<SparseVec>> {
        basis
            .iter()
            .map(|b| {
                let f = left
                    .mul(&NCPoly::monomial(b.clone(), FieldValue::one()))
                    .mul(right);
                let nf = self.normal_form(&f)?;
                Ok(self.coords(&nf, target_index))
            })
            .collect()
    }

    /// Basis of the degree-`d` part of the center.
    pub fn central_elements(&self, d: u32) -> Result<Vec<NCPoly>> {
        let basis = self.standard_monomials(d)?;
        let n = self.source.ngens();
        let mut blocks = Vec::new();
        for i in 0..n {
            let e = d + self.source.degrees[i];
            let target = self.standard_monomials(e)?;
            let tix = Self::index_of(&target);
            let x = NCPoly::var(i);
            let right = self.multiplication_columns(&basis, &tix, &NCPoly::one(), &x)?;
            let left = self.multiplication_columns(&basis, &tix, &x, &NCPoly::one())?;
            blocks.push((target.len(), right, left));
        }
        let total_rows: usize = blocks.iter().map(|b| b.0).sum();
        let mut m = Matrix::zeros(total_rows, basis.len());
        let mut off = 0;
        for (len, right, left) in &blocks {
            for (col, (r, l)) in right.iter().zip(left).enumerate() {
                let diff = crate::linalg::sparse_axpy(r, &FieldValue::from_int(-1), l);
                for (row, v) in diff {
                    m.data[off + row][col] = v;
                }
            }
            off += len;
        }
        Ok(kernel_polys(&m, &basis, &self.source))
    }

    /// True if left multiplication by `x` is injective on `A_d` for every `d <= max_deg`.
    pub fn left_regular_check(&self, x: &NCPoly, max_deg: u32) -> Result<bool> {
        let dx = x.degree(&self.source.degrees);
        for d in 0..=max_deg {
            let basis = self.standard_monomials(d)?;
            let target = self.standard_monomials(d + dx)?;
            let tix = Self::index_of(&target);
            let cols = self.multiplication_columns(&basis, &tix, x, &NCPoly::one())?;
            let mut e = Echelon::new();
            for c in &cols {
                e.insert(c);
            }
            if e.rank() < basis.len() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates of `f` on the standard words of its degree (after normal form).
    pub fn component_coords(&self, f: &NCPoly, d: u32) -> Result<SparseVec> {
        let basis = self.standard_monomials(d)?;
        let nf = self.normal_form(f)?;
        Ok(self.coords(&nf, &Self::index_of(&basis)))
    }
}

/// Basis of the null space as polynomials over `basis`, each scaled so its
/// largest word has coefficient 1.
pub(crate) fn kernel_polys(m: &Matrix, basis: &[Word], p: &Presentation) -> Vec<NCPoly> {
    m.kernel()
        .into_iter()
        .map(|v| {
            let f = NCPoly::from_terms(basis.iter().cloned().zip(v));
            f.monic(&p.order)
        })
        .collect()
}

fn add_key(work: &mut BTreeMap<Key, FieldValue>, k: Key, c: &FieldValue) {
    if c.is_zero() {
        return;
    }
    match work.entry(k) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}

/// Overlap lengths `k` with a proper suffix of `u` equal to a proper prefix of `v`.
fn overlaps<'a>(u: &'a [u8], v: &'a [u8]) -> impl Iterator<Item = usize> + 'a {
    let m = u.len().min(v.len());
    (1..m).filter(move |&k| u[u.len() - k..] == v[..k])
}

/// Complete `p` through `degree_bound`.
pub fn complete(p: &Presentation, degree_bound: u32) -> NCGroebnerBasis {
    let mut gb = NCGroebnerBasis::empty(p);
    gb.extend_to(degree_bound);
    gb
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularSequenceReport {
    pub central: Vec<bool>,
    pub expected: Vec<i64>,
    pub quotient: HilbertFunction,
    pub matches: bool,
    /// Degree at which the quotient vanished, if it did within the bound.
    pub vanishes_from: Option<u32>,
    pub total_dimension: Option<u64>,
    pub regular: bool,
}

/// Multiply a truncated integer series by `(1 - t^k)`.
pub fn times_one_minus_tk(series: &[i64], k: usize) -> Vec<i64> {
    let mut out = series.to_vec();
    for d in k..series.len() {
        out[d] -= series[d - k];
    }
    out
}

/// Regularity of a sequence of central elements via Hilbert functions.
pub fn regular_sequence_check(
    p: &Presentation,
    elems: &[NCPoly],
    max_deg: u32,
) -> Result<RegularSequenceReport> {
    let gb = complete(p, max_deg);
    let h = gb.hilbert_function(max_deg)?;
    let mut central = Vec::new();
    for e in elems {
        if e.is_zero() {
            return Err(Error::Invalid("zero element in a regular sequence".into()));
        }
        let d = e.degree(&p.degrees);
        let mut g = gb.clone();
        let need = d + p.degrees.iter().max().copied().unwrap_or(1);
        if !g.covers(need) {
            g.extend_to(need);
        }
        central.push(g.is_central(e)?);
    }
    let mut expected: Vec<i64> = h.values.iter().map(|&v| v as i64).collect();
    for e in elems {
        expected = times_one_minus_tk(&expected, e.degree(&p.degrees) as usize);
    }
    let q = p.quotient(elems)?;
    let qgb = complete(&q, max_deg);
    let qh = qgb.hilbert_function(max_deg)?;
    let matches = qh
        .values
        .iter()
        .zip(&expected)
        .all(|(&a, &b)| a as i64 == b);
    let vanishes_from = qh
        .values
        .iter()
        .position(|&v| v == 0)
        .map(|d| d as u32);
    let total_dimension = vanishes_from.map(|_| qh.total());
    Ok(RegularSequenceReport {
        regular: matches && central.iter().all(|&c| c),
        central,
        expected,
        quotient: qh,
        matches,
        vanishes_from,
        total_dimension,
    })
}

/// The degree-two normal elements of an algebra, described by the ideal of
/// the cone of `z` in `A_2` with `x_i z` in `z A_1` for every generator.
#[derive(Clone, Debug, Serialize)]
pub struct NormalLocusReport {
    /// Coordinates are taken on these standard words of degree 2.
    pub basis: Vec<String>,
    /// Generators of the ideal of the locus, in the coordinates z1, z2, ...
    pub equations: Vec<String>,
    /// Dimension of the projective locus, or `None` when it is empty.
    pub projective_dimension: Option<usize>,
    pub degree: u64,
    pub central: Vec<String>,
    /// Linear subspaces of normal elements found on the locus.
    pub components: Vec<Vec<String>>,
    /// False when a zero-dimensional locus may have points outside the field.
    pub points_complete: bool,
    pub empty: bool,
}

fn unit_exp(n: usize, k: usize) -> Vec<u16> {
    let mut e = vec![0u16; n];
    e[k] = 1;
    e
}

impl NCGroebnerBasis {
    /// True if `z A_1 = A_1 z`.
    pub fn is_normal(&self, z: &NCPoly) -> Result<bool> {
        let d = z.degree(&self.source.degrees);
        self.check(d + 1)?;
        let mut left = Echelon::new();
        let mut right = Echelon::new();
        let mut rv = Vec::new();
        for i in 0..self.source.ngens() {
            let x = NCPoly::var(i);
            let a = self.component_coords(&x.mul(z), d + 1)?;
            let b = self.component_coords(&z.mul(&x), d + 1)?;
            left.insert(&a);
            right.insert(&b);
            rv.push(b);
        }
        Ok(left.rank() == right.rank() && rv.iter().all(|v| left.contains(v)))
    }

    pub fn normal_elements_deg2(&self) -> Result<NormalLocusReport> {
        use crate::commutative::{CIdeal, CPoly};
        let p = &self.source;
        if p.degrees.iter().any(|&d| d != 1) {
            return Err(Error::Invalid("normal elements need degree-one generators".into()));
        }
        self.check(3)?;
        let n = p.ngens();
        let b2 = self.standard_monomials(2)?;
        let b3 = self.standard_monomials(3)?;
        let ix3 = Self::index_of(&b3);
        let nz = b2.len();
        let nv = nz + n * n;
        // z_k then m_ij at nz + i * n + j
        let mut left = Vec::new();
        let mut right = Vec::new();
        for i in 0..n {
            let x = NCPoly::var(i);
            left.push(self.multiplication_columns(&b2, &ix3, &x, &NCPoly::one())?);
            right.push(self.multiplication_columns(&b2, &ix3, &NCPoly::one(), &x)?);
        }
        let mut gens = Vec::new();
        for i in 0..n {
            let mut eqs = vec![CPoly::zero(nv); b3.len()];
            for k in 0..nz {
                let zk = CPoly::var(nv, k);
                for (row, c) in &left[i][k] {
                    eqs[*row] = eqs[*row].add(&zk.scale(c));
                }
                for j in 0..n {
                    let zm = zk.mul(&CPoly::var(nv, nz + i * n + j));
                    for (row, c) in &right[j][k] {
                        eqs[*row] = eqs[*row].sub(&zm.scale(c));
                    }
                }
            }
            gens.extend(eqs.into_iter().filter(|e| !e.is_zero()));
        }
        let mut names: Vec<String> = (1..=nz).map(|k| format!("z{k}")).collect();
        for i in 1..=n {
            for j in 1..=n {
                names.push(format!("m{i}_{j}"));
            }
        }
        let ideal = CIdeal::new(names, gens)?;
        let locus = ideal.eliminate(&(nz..nv).collect::<Vec<_>>());
        let hd = locus.hilbert_data(4)?;
        let lgb = locus.groebner(crate::commutative::TermOrder::DegRevLex).polys();
        let to_poly = |v: &[FieldValue]| {
            NCPoly::from_terms(b2.iter().cloned().zip(v.iter().cloned()).filter(|(_, c)| !c.is_zero()))
        };
        let mut components: Vec<Vec<NCPoly>> = Vec::new();
        let mut points_complete = true;
        if lgb.iter().all(|g| g.total_degree().unwrap_or(0) <= 1) {
            let rows: Vec<Vec<FieldValue>> = lgb
                .iter()
                .map(|g| (0..nz).map(|k| g.coeff(&unit_exp(nz, k))).collect())
                .collect();
            let span: Vec<Vec<FieldValue>> = if rows.is_empty() {
                Matrix::identity(nz).data
            } else {
                Matrix::from_rows(rows)?.kernel()
            };
            if !span.is_empty() {
                components.push(span.iter().map(|v| to_poly(v)).collect());
            }
        } else if hd.projective_dimension == Some(0) {
            let pts = crate::commutative::projective_rational_points(&lgb, nz)?;
            points_complete = pts.complete;
            components.extend(pts.points.iter().map(|v| vec![to_poly(v)]));
        }
        for comp in &components {
            for f in comp {
                if !self.is_normal(f)? {
                    return Err(Error::Verification(format!("{} is not normal", p.poly_text(f))));
                }
            }
        }
        let central = self.central_elements(2)?.iter().map(|f| p.poly_text(f)).collect();
        Ok(NormalLocusReport {
            basis: b2.iter().map(|w| p.poly_text(&NCPoly::monomial(w.clone(), FieldValue::one()))).collect(),
            equations: locus.gens.iter().map(|g| g.to_text(&locus.names)).collect(),
            empty: hd.projective_dimension.is_none(),
            projective_dimension: hd.projective_dimension,
            degree: hd.degree,
            central,
            components: components
                .iter()
                .map(|c| c.iter().map(|f| p.poly_text(f)).collect())
                .collect(),
            points_complete,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{parse_presentation, word};

    pub(crate) const S_TEXT: &str = "vars x1 x2 x3 x4
order deglex x3 < x2 < x1 < x4
rel x1*x2 - x3^2
rel x4^2 - x2*x1
rel x1*x3 - x2*x4
rel x4*x1 - x3*x2
rel x2*x3 - x3*x1
rel x4*x2 - x1*x4
";

    fn s() -> Presentation {
        parse_presentation(S_TEXT).unwrap()
    }

    #[test]
    fn s_basis_matches_known_list() {
        let p = s();
        let gb = complete(&p, 5);
        let expected = [
            "x1*x2 - x3^2",
            "x4^2 - x2*x1",
            "x1*x3 - x2*x4",
            "x4*x1 - x3*x2",
            "x2*x3 - x3*x1",
            "x4*x2 - x1*x4",
            "x4*x3^2 - x3*x2^2",
            "x4*x3*x2 - x2*x1^2",
            "x4*x3*x1 - x1*x4*x3",
        ];
        let got = gb.elements();
        assert_eq!(got.len(), 9);
        for e in expected {
            let f = p.parse_poly(e).unwrap().monic(&p.order);
            assert!(got.contains(&f), "missing {e}");
        }
        assert!(gb.finite);
    }

    #[test]
    fn free_algebra_has_no_rules() {
        let f = Presentation::free(&["a", "b", "c", "d"]);
        let gb = complete(&f, 4);
        assert_eq!(gb.rule_count(), 0);
        assert_eq!(gb.hilbert_function(3).unwrap().values, vec![1, 4, 16, 64]);
        assert_eq!(gb.standard_monomials(2).unwrap().len(), 16);
        assert!(gb.central_elements(1).unwrap().is_empty());
    }

    #[test]
    fn u2_minus_v2_against_brute_force() {
        let p = parse_presentation("vars v u\nrel u^2 - v^2").unwrap();
        let gb = complete(&p, 4);
        let h = gb.hilbert_function(4).unwrap();
        // oracle: dimension of the quotient by the span of all a*r*b
        for d in 0..=4u32 {
            let words: Vec<Word> = all_words(2, [d]);
            let ix: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
            let mut e = Echelon::new();
            if d >= 2 {
                for a in all_words(2, 0..=d - 2) {
                    let b_len = d - 2 - a.len() as u32;
                    for b in all_words(2, [b_len]) {
                        let f = NCPoly::monomial(a.clone(), FieldValue::one())
                            .mul(&p.relations[0])
                            .mul(&NCPoly::monomial(b, FieldValue::one()));
                        e.insert(&crate::linalg::sparse_from_pairs(
                            f.terms.iter().map(|(w, c)| (ix[w], c.clone())),
                        ));
                    }
                }
            }
            assert_eq!(h.values[d as usize] as usize, words.len() - e.rank());
        }
        assert_eq!(h.values, vec![1, 2, 3, 4, 5]);
    }

    fn all_words(n: u8, lens: impl IntoIterator<Item = u32>) -> Vec<Word> {
        let mut out = Vec::new();
        for len in lens {
            let mut cur: Vec<Word> = vec![Word::new()];
            for _ in 0..len {
                cur = cur
                    .into_iter()
                    .flat_map(|w| {
                        (0..n).map(move |g| {
                            let mut v = w.clone();
                            v.push(g);
                            v
                        })
                    })
                    .collect();
            }
            out.extend(cur);
        }
        out
    }

    #[test]
    fn normal_forms_in_s() {
        let p = s();
        let gb = complete(&p, 6);
        let f = p.parse_poly("x1*x2").unwrap();
        assert_eq!(gb.normal_form(&f).unwrap(), p.parse_poly("x3^2").unwrap());
        let z1 = p.parse_poly("(x1 - x2 - x3 - x4)^2").unwrap();
        let z2 = p.parse_poly("x1^2 + x2^2 + x3*x4 + x4*x3").unwrap();
        assert_eq!(gb.normal_form(&z1).unwrap(), gb.normal_form(&z2).unwrap());
        assert!(gb.normal_form(&NCPoly::zero()).unwrap().is_zero());
        assert_eq!(gb.hilbert_function(5).unwrap().values, vec![1, 4, 10, 20, 35, 56]);
        assert_eq!(gb.standard_monomials(2).unwrap().len(), 10);
    }

    #[test]
    fn centrality_in_s() {
        let p = s();
        let gb = complete(&p, 6);
        let z = p.parse_poly("x1^2 + x2^2 + x3*x4 + x4*x3").unwrap();
        assert!(gb.is_central(&z).unwrap());
        assert!(!gb.is_central(&NCPoly::var(0)).unwrap());
        assert!(gb.is_central(&NCPoly::one()).unwrap());
        let c = gb.central_elements(2).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0], z.monic(&p.order));
    }

    #[test]
    fn left_regularity_in_s() {
        let p = s();
        let gb = complete(&p, 8);
        assert!(gb.left_regular_check(&NCPoly::var(2), 5).unwrap());
        assert!(gb.left_regular_check(&NCPoly::var(3), 5).unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        let p = parse_presentation("vars v u\nrel u^2 - v^2\nrel u*v - v*u").unwrap();
        let mut q = p.clone();
        q.relations.push(p.parse_poly("u^2*v*u - v^4").unwrap());
        let gb = complete(&q, 3);
        assert!(matches!(
            gb.hilbert_function(5),
            Err(Error::BoundExceeded { requested: 5, available: 3 })
        ));
        let _ = word(&[0]);
    }

    #[test]
    fn repeated_element_is_not_regular() {
        let p = s();
        let x1 = NCPoly::var(0);
        let r = regular_sequence_check(&p, &[x1.clone(), x1], 4).unwrap();
        assert!(!r.regular);
    }

    #[test]
    fn normal_elements_of_t_and_s() {
        let t = crate::presentations::parse_presentation(include_str!("../data/T.alg")).unwrap();
        let r = complete(&t, 4).normal_elements_deg2().unwrap();
        assert!(r.empty && r.central.is_empty() && r.components.is_empty());
        let s = crate::presentations::parse_presentation(include_str!("../data/S.alg")).unwrap();
        let gb = complete(&s, 4);
        let r = gb.normal_elements_deg2().unwrap();
        assert_eq!(r.projective_dimension, Some(0));
        assert!(r.points_complete);
        assert_eq!(r.central.len(), 1);
        let z = s.parse_poly(&r.central[0]).unwrap();
        let mut found_central = 0;
        let mut others = Vec::new();
        for c in &r.components {
            let f = s.parse_poly(&c[0]).unwrap();
            assert!(gb.is_normal(&f).unwrap());
            if gb.is_central(&f).unwrap() {
                found_central += 1;
                assert!(relation_free_multiple(&f, &z));
            } else {
                others.push(f);
            }
        }
        assert_eq!(found_central, 1);
        assert!(others.len() >= 3);
        // the non-central ones are linearly independent
        let mut e = Echelon::new();
        for f in &others {
            assert!(e.insert(&gb.component_coords(f, 2).unwrap()));
        }
    }

    fn relation_free_multiple(f: &NCPoly, g: &NCPoly) -> bool {
        let (w, c) = g.terms.iter().next().unwrap();
        let k = f.terms.get(w).cloned().unwrap_or_else(FieldValue::zero);
        !k.is_zero() && f.sub(&g.scale(&(&k / c))).is_zero()
    }

    #[test]
    fn commutative_plane_is_all_normal() {
        let p = crate::presentations::parse_presentation("vars x y\nrel x*y - y*x\n").unwrap();
        let r = complete(&p, 4).normal_elements_deg2().unwrap();
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].len(), 3);
        assert_eq!(r.projective_dimension, Some(2));
    }
}
