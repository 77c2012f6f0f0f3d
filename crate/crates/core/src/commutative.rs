//! Commutative polynomials over the exact field, Buchberger completion and the
//! ideal operations built on it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exactnum::{FieldKind, FieldValue, Rational};
use crate::presentations::{parse_poly_in, NCPoly};

pub type Exp = SmallVec<[u16; 12]>;

fn exp_degree(e: &[u16]) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

fn exp_divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn exp_lcm(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn exp_sub(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn exp_add(a: &[u16], b: &[u16]) -> Exp {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn exp_coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    DegLex,
    DegRevLex,
    /// Elimination order: graded reverse lex on the first k variables, then
    /// graded reverse lex on the rest.
    Block(usize),
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    exp_degree(a).cmp(&exp_degree(b)).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl TermOrder {
    pub fn cmp(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::DegLex => exp_degree(a).cmp(&exp_degree(b)).then_with(|| a.cmp(b)),
            TermOrder::DegRevLex => grevlex(a, b),
            TermOrder::Block(k) => {
                let k = (*k).min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

/// Commutative polynomial in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CPoly {
    nvars: usize,
    terms: BTreeMap<Exp, FieldValue>,
}

impl CPoly {
    pub fn zero(nvars: usize) -> Self {
        CPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: FieldValue) -> Self {
        let mut p = CPoly::zero(nvars);
        p.add_term(SmallVec::from_elem(0, nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        CPoly::constant(nvars, FieldValue::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e: Exp = SmallVec::from_elem(0, nvars);
        e[i] = 1;
        CPoly::monomial(e, FieldValue::one())
    }

    pub fn monomial(e: Exp, c: FieldValue) -> Self {
        let mut p = CPoly::zero(e.len());
        p.add_term(e, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exp, FieldValue)>) -> Self {
        let mut p = CPoly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear(coeffs: &[FieldValue]) -> Self {
        let n = coeffs.len();
        CPoly::from_terms(
            n,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut e: Exp = SmallVec::from_elem(0, n);
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exp, FieldValue> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u16]) -> FieldValue {
        self.terms.get(e).cloned().unwrap_or_else(FieldValue::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exp, c: FieldValue) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> CPoly {
        self.scale(&FieldValue::from_int(-1))
    }

    pub fn scale(&self, c: &FieldValue) -> CPoly {
        if c.is_zero() {
            return CPoly::zero(self.nvars);
        }
        CPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, o: &CPoly) -> CPoly {
        let mut out = CPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(exp_add(e1, e2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> CPoly {
        let mut out = CPoly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| exp_degree(e)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|e| exp_degree(e));
        match it.next() {
            None => true,
            Some(d) => it.all(|x| x == d),
        }
    }

    pub fn field(&self) -> FieldKind {
        self.terms
            .values()
            .fold(FieldKind::Rationals, |k, c| k.join(c.kind()))
    }

    pub fn leading(&self, order: TermOrder) -> Option<(&Exp, &FieldValue)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn monic(&self, order: TermOrder) -> CPoly {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &CPoly) -> Option<CPoly> {
        let order = TermOrder::DegRevLex;
        let (de, dc) = d.leading(order)?;
        let (de, dinv) = (de.clone(), dc.inv().ok()?);
        let mut rem = self.clone();
        let mut q = CPoly::zero(self.nvars);
        while let Some((e, c)) = rem.leading(order) {
            if e.iter().zip(de.iter()).any(|(a, b)| a < b) {
                return None;
            }
            let shift: Exp = e.iter().zip(de.iter()).map(|(a, b)| a - b).collect();
            let t = CPoly::monomial(shift, c * &dinv);
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Evaluate at a point.
    pub fn eval(&self, pt: &[FieldValue]) -> FieldValue {
        let mut acc = FieldValue::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &pt[i];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Replace variable i by `images[i]`; all images share one ring.
    pub fn substitute(&self, images: &[CPoly]) -> CPoly {
        let m = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<CPoly>> = images.iter().map(|p| vec![CPoly::one(m), p.clone()]).collect();
        let mut out = CPoly::zero(m);
        for (e, c) in &self.terms {
            let mut t = CPoly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                if k > 0 {
                    t = t.mul(&powers[i][k as usize]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Re-embed into a ring of `n` variables with variable i sent to `map[i]`.
    pub fn remap(&self, n: usize, map: &[usize]) -> CPoly {
        CPoly::from_terms(
            n,
            self.terms.iter().map(|(e, c)| {
                let mut f: Exp = SmallVec::from_elem(0, n);
                for (i, &k) in e.iter().enumerate() {
                    f[map[i]] += k;
                }
                (f, c.clone())
            }),
        )
    }

    /// Homogeneous component of total degree d.
    pub fn component(&self, d: u32) -> CPoly {
        CPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| exp_degree(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Commutative image of a noncommutative polynomial.
    pub fn from_nc(f: &NCPoly, nvars: usize) -> CPoly {
        let mut p = CPoly::zero(nvars);
        for (w, c) in &f.terms {
            let mut e: Exp = SmallVec::from_elem(0, nvars);
            for &x in w.iter() {
                e[x as usize] += 1;
            }
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn parse(text: &str, names: &[String]) -> Result<CPoly> {
        if names.len() > 255 {
            return Err(Error::Invalid("too many variables".into()));
        }
        Ok(CPoly::from_nc(&parse_poly_in(text, names)?, names.len()))
    }

    pub fn to_text(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| TermOrder::DegLex.cmp(b.0, a.0));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { names[i].clone() } else { format!("{}^{}", names[i], p) })
                .collect();
            let neg = c.looks_negative();
            let cabs = if neg { -c } else { c.clone() };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if mono.is_empty() {
                out.push_str(&cabs.coefficient_text());
            } else {
                if !cabs.is_one() {
                    out.push_str(&cabs.coefficient_text());
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

impl fmt::Debug for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.to_text(&names))
    }
}

/// Polynomial stored for reduction: terms ascending in the order, lead last.
#[derive(Clone, Debug)]
struct Sorted {
    terms: Vec<(Exp, FieldValue)>,
}

impl Sorted {
    fn from(p: &CPoly, order: TermOrder) -> Sorted {
        let mut terms: Vec<(Exp, FieldValue)> =
            p.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Sorted { terms }
    }

    fn to_cpoly(&self, n: usize) -> CPoly {
        CPoly::from_terms(n, self.terms.iter().cloned())
    }

    fn lead(&self) -> &Exp {
        &self.terms.last().unwrap().0
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.last() {
            if !c.is_one() {
                let inv = c.inv().expect("nonzero");
                for t in self.terms.iter_mut() {
                    t.1 = &t.1 * &inv;
                }
            }
        }
    }

    /// self - c * x^m * g, both ascending.
    fn sub_scaled(&self, c: &FieldValue, m: &[u16], g: &Sorted, order: TermOrder) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted = |k: usize| exp_add(&g.terms[k].0, m);
        let mut gj = if g.terms.is_empty() { None } else { Some(shifted(0)) };
        while i < self.terms.len() || gj.is_some() {
            let take = match (&self.terms.get(i), &gj) {
                (Some(a), Some(b)) => order.cmp(&a.0, b),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => unreachable!(),
            };
            match take {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((gj.take().unwrap(), -(c * &g.terms[j].1)));
                    j += 1;
                    gj = (j < g.terms.len()).then(|| shifted(j));
                }
                Ordering::Equal => {
                    let v = &self.terms[i].1 - &(c * &g.terms[j].1);
                    if !v.is_zero() {
                        out.push((self.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                    gj = (j < g.terms.len()).then(|| shifted(j));
                }
            }
        }
        Sorted { terms: out }
    }
}

/// Full reduction of f by the monic polynomials `basis`.
fn reduce_full(f: &Sorted, basis: &[&Sorted], order: TermOrder) -> Sorted {
    let mut f = f.clone();
    let mut rem: Vec<(Exp, FieldValue)> = Vec::new();
    while let Some((e, c)) = f.terms.last().cloned() {
        match basis.iter().find(|g| exp_divides(g.lead(), &e)) {
            Some(g) => {
                let m = exp_sub(&e, g.lead());
                let lc = &g.terms.last().unwrap().1;
                let coef = if lc.is_one() { c.clone() } else { &c / lc };
                f = f.sub_scaled(&coef, &m, g, order);
            }
            None => {
                rem.push((e, c));
                f.terms.pop();
            }
        }
    }
    rem.reverse();
    Sorted { terms: rem }
}

/// Reduced Groebner basis of a commutative ideal.
#[derive(Clone, Debug)]
pub struct CGroebner {
    pub nvars: usize,
    pub order: TermOrder,
    polys: Vec<Sorted>,
}

/// Buchberger completion with the Gebauer-Moeller criteria and the normal
/// selection strategy.
pub fn buchberger(gens: &[CPoly], nvars: usize, order: TermOrder) -> CGroebner {
    let mut store: Vec<Sorted> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<(usize, usize, Exp)> = Vec::new();

    fn update(
        store: &[Sorted],
        active: &mut Vec<usize>,
        pairs: &mut Vec<(usize, usize, Exp)>,
        h: usize,
    ) {
        let lh = store[h].lead().clone();
        let cands: Vec<(usize, Exp)> = active
            .iter()
            .map(|&g| (g, exp_lcm(&lh, store[g].lead())))
            .collect();
        // chain criterion among the new pairs
        let mut keep: Vec<(usize, Exp)> = Vec::new();
        for (k, (g, l)) in cands.iter().enumerate() {
            let coprime = exp_coprime(&lh, store[*g].lead());
            let dominated = cands.iter().enumerate().any(|(k2, (_, l2))| {
                k2 != k && exp_divides(l2, l) && (l2 != l || k2 < k)
            });
            if coprime || !dominated {
                keep.push((*g, l.clone()));
            }
        }
        // drop new pairs with coprime leads (product criterion)
        let fresh: Vec<(usize, usize, Exp)> = keep
            .into_iter()
            .filter(|(g, _)| !exp_coprime(&lh, store[*g].lead()))
            .map(|(g, l)| (g, h, l))
            .collect();
        // old pairs made redundant by h
        pairs.retain(|(a, b, l)| {
            !exp_divides(&lh, l)
                || exp_lcm(store[*a].lead(), &lh) == *l
                || exp_lcm(store[*b].lead(), &lh) == *l
        });
        pairs.extend(fresh);
        active.retain(|&g| !exp_divides(&lh, store[g].lead()));
        active.push(h);
    }

    let mut input: Vec<Sorted> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let mut s = Sorted::from(p, order);
            s.make_monic();
            s
        })
        .collect();
    input.sort_by(|a, b| order.cmp(a.lead(), b.lead()));
    for f in input {
        let basis: Vec<&Sorted> = active.iter().map(|&i| &store[i]).collect();
        let mut r = reduce_full(&f, &basis, order);
        if r.terms.is_empty() {
            continue;
        }
        r.make_monic();
        store.push(r);
        let h = store.len() - 1;
        update(&store, &mut active, &mut pairs, h);
    }

    while !pairs.is_empty() {
        let mut best = 0;
        for k in 1..pairs.len() {
            let o = order.cmp(&pairs[k].2, &pairs[best].2);
            if o == Ordering::Less || (o == Ordering::Equal && (pairs[k].0, pairs[k].1) < (pairs[best].0, pairs[best].1)) {
                best = k;
            }
        }
        let (a, b, l) = pairs.swap_remove(best);
        let fa = &store[a];
        let fb = &store[b];
        let ma = exp_sub(&l, fa.lead());
        let mb = exp_sub(&l, fb.lead());
        let shifted_a = Sorted { terms: vec![] }.sub_scaled(&FieldValue::from_int(-1), &ma, fa, order);
        let spoly = shifted_a.sub_scaled(&FieldValue::one(), &mb, fb, order);
        let basis: Vec<&Sorted> = active.iter().map(|&i| &store[i]).collect();
        let mut r = reduce_full(&spoly, &basis, order);
        if r.terms.is_empty() {
            continue;
        }
        r.make_monic();
        store.push(r);
        let h = store.len() - 1;
        update(&store, &mut active, &mut pairs, h);
    }

    // minimal, then interreduced
    let mut leads: Vec<usize> = active.clone();
    leads.sort_by(|&x, &y| order.cmp(store[x].lead(), store[y].lead()));
    let mut minimal: Vec<usize> = Vec::new();
    for &i in &leads {
        if !minimal.iter().any(|&j| exp_divides(store[j].lead(), store[i].lead())) {
            minimal.push(i);
        }
    }
    let mut out: Vec<Sorted> = Vec::new();
    for (k, &i) in minimal.iter().enumerate() {
        let others: Vec<&Sorted> = minimal
            .iter()
            .enumerate()
            .filter(|(k2, _)| *k2 != k)
            .map(|(_, &j)| &store[j])
            .collect();
        let lead = store[i].terms.last().unwrap().clone();
        let mut tail = store[i].clone();
        tail.terms.pop();
        let mut r = reduce_full(&tail, &others, order);
        r.terms.push(lead);
        r.make_monic();
        out.push(r);
    }
    CGroebner { nvars, order, polys: out }
}

impl CGroebner {
    pub fn polys(&self) -> Vec<CPoly> {
        self.polys.iter().map(|p| p.to_cpoly(self.nvars)).collect()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_exponents(&self) -> Vec<Exp> {
        self.polys.iter().map(|p| p.lead().clone()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.polys.iter().any(|p| exp_degree(p.lead()) == 0)
    }

    pub fn normal_form(&self, f: &CPoly) -> CPoly {
        let basis: Vec<&Sorted> = self.polys.iter().collect();
        reduce_full(&Sorted::from(f, self.order), &basis, self.order).to_cpoly(self.nvars)
    }

    pub fn contains(&self, f: &CPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Monomials of total degree d outside the lead-term ideal.
    pub fn standard_monomials(&self, d: u32) -> Vec<Exp> {
        let leads = self.leading_exponents();
        let mut out = Vec::new();
        for_each_monomial(self.nvars, d, &mut |e| {
            if !leads.iter().any(|l| exp_divides(l, e)) {
                out.push(e.clone());
            }
        });
        out
    }

    pub fn hilbert_function(&self, d_max: u32) -> Vec<u64> {
        let leads = self.leading_exponents();
        (0..=d_max)
            .map(|d| {
                let mut count = 0u64;
                for_each_monomial(self.nvars, d, &mut |e| {
                    if !leads.iter().any(|l| exp_divides(l, e)) {
                        count += 1;
                    }
                });
                count
            })
            .collect()
    }
}

/// Visit every exponent vector of total degree d in n variables.
pub fn for_each_monomial(n: usize, d: u32, f: &mut dyn FnMut(&Exp)) {
    fn rec(e: &mut Exp, i: usize, left: u32, f: &mut dyn FnMut(&Exp)) {
        if i + 1 == e.len() {
            e[i] = left as u16;
            f(e);
            e[i] = 0;
            return;
        }
        for k in (0..=left).rev() {
            e[i] = k as u16;
            rec(e, i + 1, left - k, f);
        }
        e[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            f(&SmallVec::new());
        }
        return;
    }
    let mut e: Exp = SmallVec::from_elem(0, n);
    rec(&mut e, 0, d, f);
}

/// Hilbert function and its stable polynomial data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub values: Vec<u64>,
    /// Numerator N(t) of the Hilbert series N(t) / (1-t)^n.
    pub numerator: Vec<i64>,
    /// Degree of the Hilbert polynomial; `None` when the projective scheme is empty.
    pub projective_dimension: Option<usize>,
    pub degree: u64,
}

impl HilbertData {
    pub fn krull_dimension(&self) -> usize {
        self.projective_dimension.map(|d| d + 1).unwrap_or(0)
    }
}

fn poly_sub_shift(a: &[i64], b: &[i64], shift: usize) -> Vec<i64> {
    let mut out = a.to_vec();
    if out.len() < b.len() + shift {
        out.resize(b.len() + shift, 0);
    }
    for (k, &c) in b.iter().enumerate() {
        out[k + shift] -= c;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn minimize_monomials(gens: &[Exp]) -> Vec<Exp> {
    let mut g: Vec<Exp> = gens.to_vec();
    g.sort_by_key(|e| exp_degree(e));
    g.dedup();
    let mut out: Vec<Exp> = Vec::new();
    for e in g {
        if !out.iter().any(|m| exp_divides(m, &e)) {
            out.push(e);
        }
    }
    out
}

/// Numerator of the Hilbert series of k[x]/(monomials), by pivoting on a
/// variable power: N(I) = N(I + p) - t^deg(p) N(I : p) (with signs so that
/// N(0) = 1).
pub fn monomial_hilbert_numerator(gens: &[Exp]) -> Vec<i64> {
    let gens = minimize_monomials(gens);
    if gens.is_empty() {
        return vec![1];
    }
    let n = gens[0].len();
    let mut coprime = true;
    let mut used = vec![false; n];
    'outer: for g in &gens {
        for (i, &x) in g.iter().enumerate() {
            if x > 0 {
                if used[i] {
                    coprime = false;
                    break 'outer;
                }
                used[i] = true;
            }
        }
    }
    if coprime {
        let mut out = vec![1i64];
        for g in &gens {
            out = poly_sub_shift(&out, &out.clone(), exp_degree(g) as usize);
        }
        return out;
    }
    let mixed: Vec<&Exp> = gens.iter().filter(|g| g.iter().filter(|&&x| x > 0).count() > 1).collect();
    let var = (0..n)
        .max_by_key(|&i| (mixed.iter().filter(|g| g[i] > 0).count(), std::cmp::Reverse(i)))
        .unwrap();
    let mut exps: Vec<u16> = mixed.iter().map(|g| g[var]).filter(|&x| x > 0).collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2];
    let mut pivot: Exp = SmallVec::from_elem(0, n);
    pivot[var] = e;
    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let colon: Vec<Exp> = gens.iter().map(|g| exp_sub(&exp_lcm(g, &pivot), &pivot)).collect();
    let a = monomial_hilbert_numerator(&plus);
    let b = monomial_hilbert_numerator(&colon);
    // HS(I) = HS(I + p) + t^e HS(I : p)
    let mut out = a;
    let neg: Vec<i64> = b.iter().map(|c| -c).collect();
    out = poly_sub_shift(&out, &neg, e as usize);
    out
}

/// Split N(t) = (1-t)^k Q(t) with Q(1) != 0; returns (k, Q).
pub fn divide_out_one_minus_t(num: &[i64]) -> (usize, Vec<i64>) {
    let mut q = num.to_vec();
    let mut k = 0;
    while !q.is_empty() && q.iter().sum::<i64>() == 0 {
        // synthetic division by (1 - t): q = (1-t) r, r_j = sum_{i<=j} q_i
        let mut r = Vec::with_capacity(q.len() - 1);
        let mut acc = 0;
        for &c in &q[..q.len() - 1] {
            acc += c;
            r.push(acc);
        }
        q = r;
        k += 1;
    }
    (k, q)
}

/// Fit the leading data of the Hilbert polynomial from the tail of `h`.
pub fn fit_hilbert_tail(h: &[u64], nvars: usize) -> Result<(Option<usize>, u64)> {
    let mut diff: Vec<i128> = h.iter().map(|&x| x as i128).collect();
    for k in 0..nvars.max(1) {
        let window = 4.max(k + 2) + 1;
        if diff.len() >= window {
            let tail = &diff[diff.len() - window..];
            if tail.iter().all(|&x| x == tail[0]) {
                let v = tail[0];
                if v < 0 {
                    break;
                }
                if k == 0 && v == 0 {
                    return Ok((None, 0));
                }
                return Ok((Some(k), v as u64));
            }
        }
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
    }
    Err(Error::Resource(format!(
        "Hilbert function does not stabilize within degree {}",
        h.len().saturating_sub(1)
    )))
}

/// An ideal of a polynomial ring with named variables.
#[derive(Clone, Debug)]
pub struct CIdeal {
    pub names: Vec<String>,
    pub gens: Vec<CPoly>,
}

impl CIdeal {
    pub fn new(names: Vec<String>, gens: Vec<CPoly>) -> Result<Self> {
        if gens.iter().any(|g| g.nvars() != names.len()) {
            return Err(Error::Invalid("generator arity does not match the variables".into()));
        }
        Ok(CIdeal { names, gens })
    }

    pub fn parse(names: &[&str], gens: &[&str]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let gens = gens.iter().map(|g| CPoly::parse(g, &names)).collect::<Result<Vec<_>>>()?;
        CIdeal::new(names, gens)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn groebner(&self, order: TermOrder) -> CGroebner {
        buchberger(&self.gens, self.nvars(), order)
    }

    pub fn contains(&self, f: &CPoly) -> bool {
        self.groebner(TermOrder::DegRevLex).contains(f)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// f in the radical, via 1 in I + (1 - t f).
    pub fn radical_contains(&self, f: &CPoly) -> bool {
        let n = self.nvars();
        let map: Vec<usize> = (0..n).collect();
        let mut gens: Vec<CPoly> = self.gens.iter().map(|g| g.remap(n + 1, &map)).collect();
        let t = CPoly::var(n + 1, n);
        gens.push(CPoly::one(n + 1).sub(&t.mul(&f.remap(n + 1, &map))));
        buchberger(&gens, n + 1, TermOrder::DegRevLex).is_unit_ideal()
    }

    /// I intersected with the subring in the variables not listed.
    pub fn eliminate(&self, remove: &[usize]) -> CIdeal {
        let n = self.nvars();
        let keep: Vec<usize> = (0..n).filter(|i| !remove.contains(i)).collect();
        let mut perm = vec![0; n];
        for (k, &i) in remove.iter().chain(keep.iter()).enumerate() {
            perm[i] = k;
        }
        let gens: Vec<CPoly> = self.gens.iter().map(|g| g.remap(n, &perm)).collect();
        let gb = buchberger(&gens, n, TermOrder::Block(remove.len()));
        let out: Vec<CPoly> = gb
            .polys()
            .into_iter()
            .filter(|p| p.terms().keys().all(|e| e[..remove.len()].iter().all(|&x| x == 0)))
            .map(|p| {
                CPoly::from_terms(
                    keep.len(),
                    p.terms().iter().map(|(e, c)| (e[remove.len()..].iter().copied().collect(), c.clone())),
                )
            })
            .collect();
        CIdeal {
            names: keep.iter().map(|&i| self.names[i].clone()).collect(),
            gens: out,
        }
    }

    pub fn intersect(&self, other: &CIdeal) -> Result<CIdeal> {
        if self.names != other.names {
            return Err(Error::Invalid("ideals live in different rings".into()));
        }
        let n = self.nvars();
        let map: Vec<usize> = (1..=n).collect();
        let t = CPoly::var(n + 1, 0);
        let one_minus_t = CPoly::one(n + 1).sub(&t);
        let mut gens: Vec<CPoly> = self.gens.iter().map(|g| t.mul(&g.remap(n + 1, &map))).collect();
        gens.extend(other.gens.iter().map(|g| one_minus_t.mul(&g.remap(n + 1, &map))));
        let mut names = vec!["_t".to_string()];
        names.extend(self.names.iter().cloned());
        Ok(CIdeal { names, gens }.eliminate(&[0]))
    }

    pub fn hilbert_data(&self, d_max: u32) -> Result<HilbertData> {
        if !self.is_homogeneous() {
            return Err(Error::Inhomogeneous("hilbert_data needs a homogeneous ideal".into()));
        }
        let gb = self.groebner(TermOrder::DegRevLex);
        let values = gb.hilbert_function(d_max);
        let numerator = monomial_hilbert_numerator(&gb.leading_exponents());
        let (k, q) = divide_out_one_minus_t(&numerator);
        let krull = self.nvars() - k;
        let degree: i64 = q.iter().sum();
        Ok(HilbertData {
            values,
            numerator,
            projective_dimension: krull.checked_sub(1),
            degree: if krull == 0 { 0 } else { degree as u64 },
        })
    }
}

/// Rational points of a zero-dimensional ideal.
#[derive(Clone, Debug, Default)]
pub struct PointSet {
    pub points: Vec<Vec<FieldValue>>,
    /// False when some univariate eliminant has roots outside Q.
    pub complete: bool,
}

fn divisors(n: &BigInt) -> Option<Vec<u128>> {
    let mut m = n.abs().to_u128()?;
    if m == 0 {
        return None;
    }
    let mut primes = Vec::new();
    let mut p = 2u128;
    while p * p <= m && p < 2_000_000 {
        while m % p == 0 {
            primes.push(p);
            m /= p;
        }
        p += 1;
    }
    if m > 1 {
        // may be composite when the trial bound was hit; callers treat missed roots as incompleteness
        primes.push(m);
    }
    let mut out = vec![1u128];
    let mut i = 0;
    while i < primes.len() {
        let q = primes[i];
        let mut k = 0;
        while i < primes.len() && primes[i] == q {
            k += 1;
            i += 1;
        }
        let base = out.clone();
        let mut pw = 1u128;
        for _ in 0..k {
            pw *= q;
            out.extend(base.iter().map(|d| d * pw));
        }
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

/// Distinct rational roots of a univariate polynomial given by ascending
/// coefficients, and whether they account for the whole squarefree degree.
pub fn rational_roots(coeffs: &[FieldValue]) -> (Vec<FieldValue>, bool) {
    let mut c: Vec<Rational> = match coeffs.iter().map(FieldValue::as_rational).collect::<Option<Vec<_>>>() {
        Some(c) => c,
        None => return (Vec::new(), false),
    };
    while c.last().is_some_and(Rational::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return (Vec::new(), c.is_empty());
    }
    let mut roots = Vec::new();
    let shift = c.iter().position(|x| !x.is_zero()).unwrap();
    if shift > 0 {
        roots.push(FieldValue::zero());
        c.drain(..shift);
    }
    let lcm = c.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let horner = |x: &FieldValue| {
        c.iter().rev().fold(FieldValue::zero(), |acc, k| &(&acc * x) + &FieldValue::Q(k.clone()))
    };
    let mut found = 0usize;
    if c.len() > 1 {
        if let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) {
            let mut seen = std::collections::BTreeSet::new();
            for p in &ps {
                for q in &qs {
                    for sign in [1i64, -1] {
                        let r = Rational::new(BigInt::from(*p) * sign, BigInt::from(*q)).unwrap();
                        if seen.insert(r.clone()) {
                            let v = FieldValue::Q(r);
                            if horner(&v).is_zero() {
                                roots.push(v);
                                found += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    // compare with the degree of the squarefree part
    let f = CPoly::from_terms(
        1,
        c.iter().enumerate().map(|(k, x)| (SmallVec::from_slice(&[k as u16]), FieldValue::Q(x.clone()))),
    );
    let sqfree = univariate_squarefree_degree(&f);
    (roots, found == sqfree)
}

fn univariate_squarefree_degree(f: &CPoly) -> usize {
    let deg = f.total_degree().unwrap_or(0) as usize;
    if deg == 0 {
        return 0;
    }
    let df = CPoly::from_terms(
        1,
        f.terms()
            .iter()
            .filter(|(e, _)| e[0] > 0)
            .map(|(e, c)| (SmallVec::from_slice(&[e[0] - 1]), c * &FieldValue::from_int(e[0] as i64))),
    );
    let g = univariate_gcd(f, &df);
    deg - g.total_degree().unwrap_or(0) as usize
}

fn univariate_gcd(a: &CPoly, b: &CPoly) -> CPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = buchberger(&[b.clone()], 1, TermOrder::Lex).normal_form(&a);
        a = b;
        b = r;
    }
    a
}

fn chart_solve(gens: Vec<CPoly>, n: usize, fixed: usize, out: &mut PointSet) -> Result<()> {
    let gb = buchberger(&gens, n, TermOrder::Lex);
    if gb.is_unit_ideal() {
        return Ok(());
    }
    if fixed == n {
        // every variable is pinned by a linear polynomial
        let mut pt = vec![FieldValue::zero(); n];
        for p in gb.polys() {
            let (e, _) = p.leading(TermOrder::Lex).unwrap();
            let v = e.iter().position(|&k| k == 1).unwrap();
            pt[v] = -&p.coeff(&vec![0u16; n]);
        }
        out.points.push(pt);
        return Ok(());
    }
    let v = n - 1 - fixed;
    let uni = gb
        .polys()
        .into_iter()
        .find(|p| p.terms().keys().all(|e| e.iter().enumerate().all(|(i, &k)| i == v || k == 0)))
        .ok_or_else(|| Error::Invalid("ideal is not zero-dimensional".into()))?;
    let deg = uni.total_degree().unwrap_or(0) as usize;
    let mut coeffs = vec![FieldValue::zero(); deg + 1];
    for (e, c) in uni.terms() {
        coeffs[e[v] as usize] = c.clone();
    }
    let (roots, complete) = rational_roots(&coeffs);
    out.complete &= complete;
    for r in roots {
        let mut g = gb.polys();
        g.push(CPoly::var(n, v).sub(&CPoly::constant(n, r)));
        chart_solve(g, n, fixed + 1, out)?;
    }
    Ok(())
}

/// Rational points of a zero-dimensional affine ideal.
pub fn affine_rational_points(gens: &[CPoly], nvars: usize) -> Result<PointSet> {
    let mut out = PointSet { points: Vec::new(), complete: true };
    chart_solve(gens.to_vec(), nvars, 0, &mut out)?;
    out.points.sort();
    Ok(out)
}

/// Rational points of a homogeneous ideal with finitely many projective
/// zeros, normalized so the first nonzero coordinate is 1.
pub fn projective_rational_points(gens: &[CPoly], nvars: usize) -> Result<PointSet> {
    let mut out = PointSet { points: Vec::new(), complete: true };
    for k in 0..nvars {
        let mut g = gens.to_vec();
        for i in 0..k {
            g.push(CPoly::var(nvars, i));
        }
        g.push(CPoly::var(nvars, k).sub(&CPoly::one(nvars)));
        chart_solve(g, nvars, 0, &mut out)?;
    }
    out.points.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Echelon, SparseVec};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn p(text: &str, vars: &[&str]) -> CPoly {
        CPoly::parse(text, &names(vars)).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Degree-d Macaulay matrix rank: an oracle for homogeneous ideals.
    fn macaulay_dim(gens: &[CPoly], n: usize, d: u32) -> (Echelon, BTreeMap<Exp, usize>) {
        let mut index = BTreeMap::new();
        for_each_monomial(n, d, &mut |e| {
            let k = index.len();
            index.insert(e.clone(), k);
        });
        let mut ech = Echelon::new();
        for g in gens {
            let Some(gd) = g.total_degree() else { continue };
            if gd > d {
                continue;
            }
            for_each_monomial(n, d - gd, &mut |m| {
                let prod = g.mul(&CPoly::monomial(m.clone(), FieldValue::one()));
                let v: SparseVec = {
                    let mut v: Vec<(usize, FieldValue)> =
                        prod.terms().iter().map(|(e, c)| (index[e], c.clone())).collect();
                    v.sort_by_key(|x| x.0);
                    v
                };
                ech.insert(&v);
            });
        }
        (ech, index)
    }

    #[test]
    fn already_a_basis() {
        let v = ["x", "y"];
        let gb = buchberger(&[p("x^2", &v), p("x*y", &v)], 2, TermOrder::DegLex);
        let got = gb.polys();
        assert_eq!(got.len(), 2);
        assert!(got.contains(&p("x^2", &v)) && got.contains(&p("x*y", &v)));
    }

    #[test]
    fn lex_linear() {
        let v = ["x", "y", "z"];
        let gb = buchberger(&[p("x-y", &v), p("y-z", &v)], 3, TermOrder::Lex);
        let got = gb.polys();
        assert_eq!(got.len(), 2);
        assert!(got.contains(&p("x-z", &v)));
        assert!(got.contains(&p("y-z", &v)));
    }

    #[test]
    fn membership() {
        let v = ["x"];
        let i = CIdeal::parse(&v, &["x"]).unwrap();
        assert!(i.contains(&p("x^2", &v)));
        let i = CIdeal::parse(&v, &["x", "1-x"]).unwrap();
        assert!(i.contains(&CPoly::one(1)));
    }

    #[test]
    fn radical() {
        let v = ["x", "y"];
        let i = CIdeal::parse(&v, &["x^2"]).unwrap();
        assert!(i.radical_contains(&p("x", &v)));
        assert!(!i.contains(&p("x", &v)));
        let j = CIdeal::parse(&v, &["y"]).unwrap();
        assert!(!j.radical_contains(&p("x", &v)));
    }

    #[test]
    fn elimination_and_intersection() {
        let i = CIdeal::parse(&["t", "x", "y"], &["x - t", "y - t^2"]).unwrap();
        let e = i.eliminate(&[0]);
        assert_eq!(e.names, names(&["x", "y"]));
        assert_eq!(e.gens.len(), 1);
        let expect = p("y - x^2", &["x", "y"]);
        assert!(e.gens[0] == expect || e.gens[0] == expect.neg());
        let a = CIdeal::parse(&["x", "y"], &["x"]).unwrap();
        let b = CIdeal::parse(&["x", "y"], &["y"]).unwrap();
        let c = a.intersect(&b).unwrap();
        assert_eq!(c.gens, vec![p("x*y", &["x", "y"])]);
    }

    #[test]
    fn zero_ideal_hilbert() {
        let i = CIdeal::new(names(&["a", "b", "c", "d"]), vec![]).unwrap();
        let h = i.hilbert_data(5).unwrap();
        assert_eq!(h.values, (0..=5).map(|d| binom(d + 3, 3)).collect::<Vec<_>>());
        assert_eq!(h.projective_dimension, Some(3));
        assert_eq!(h.degree, 1);
    }

    #[test]
    fn twisted_cubic_and_points() {
        let v = ["a", "b", "c", "d"];
        let i = CIdeal::parse(&v, &["a*c-b^2", "b*d-c^2", "a*d-b*c"]).unwrap();
        let h = i.hilbert_data(10).unwrap();
        assert_eq!(h.projective_dimension, Some(1));
        assert_eq!(h.degree, 3);
        // three points in P^2
        let j = CIdeal::parse(&["x", "y", "z"], &["x*y", "y*z", "x*z"]).unwrap();
        let h = j.hilbert_data(8).unwrap();
        assert_eq!((h.projective_dimension, h.degree), (Some(0), 3));
        let k = CIdeal::parse(&["x", "y"], &["x", "y"]).unwrap();
        assert_eq!(k.hilbert_data(8).unwrap().projective_dimension, None);
    }

    #[test]
    fn hilbert_matches_macaulay_oracle() {
        let v = ["a", "b", "c", "d"];
        let gens: Vec<CPoly> = ["a^2 - b*c", "a*b*d + 2*c^3 - d^3", "b^2 - a*d + 3*c*d"]
            .iter()
            .map(|s| p(s, &v))
            .collect();
        for order in [TermOrder::DegLex, TermOrder::DegRevLex] {
            let gb = buchberger(&gens, 4, order);
            let h = gb.hilbert_function(6);
            for d in 0..=6u32 {
                let (ech, index) = macaulay_dim(&gens, 4, d);
                assert_eq!(h[d as usize], (index.len() - ech.rank()) as u64, "degree {d}");
            }
        }
    }

    #[test]
    fn numerator_matches_counting() {
        let v = ["a", "b", "c", "d"];
        let gens: Vec<CPoly> = ["a^2*b - c^3", "a*b*d + 2*c^3 - d^3", "b^2*c - a*d^2 + 3*c*d^2", "a*c*d"]
            .iter()
            .map(|s| p(s, &v))
            .collect();
        let gb = buchberger(&gens, 4, TermOrder::DegRevLex);
        let num = monomial_hilbert_numerator(&gb.leading_exponents());
        // expand N(t) / (1-t)^4 as a power series
        let mut series = num.clone();
        series.resize(15, 0);
        for _ in 0..4 {
            for k in 1..series.len() {
                series[k] += series[k - 1];
            }
        }
        let h = gb.hilbert_function(14);
        for d in 0..15 {
            assert_eq!(series[d], h[d] as i64, "degree {d}");
        }
        let tail = fit_hilbert_tail(&h, 4).unwrap();
        let data = CIdeal::new(names(&v), gens).unwrap().hilbert_data(14).unwrap();
        assert_eq!(tail, (data.projective_dimension, data.degree));
    }

    #[test]
    fn membership_is_order_independent() {
        let v = ["x", "y", "z"];
        let gens = vec![p("x^2 - y*z", &v), p("y^2 - x*z + z^2", &v)];
        let probes = [
            p("x^2*y - y^2*z", &v),
            p("(x^2 - y*z)*(x+z) + (y^2 - x*z + z^2)*y", &v),
            p("x*y*z", &v),
        ];
        let a = buchberger(&gens, 3, TermOrder::Lex);
        let b = buchberger(&gens, 3, TermOrder::DegRevLex);
        let c = buchberger(&gens, 3, TermOrder::DegLex);
        for f in &probes {
            assert_eq!(a.contains(f), b.contains(f));
            assert_eq!(b.contains(f), c.contains(f));
        }
        assert!(b.contains(&probes[1]));
        // oracle for a homogeneous probe: Macaulay matrix membership in its degree
        let f = &probes[2];
        let (ech, index) = macaulay_dim(&gens, 3, 3);
        let mut vec: Vec<(usize, FieldValue)> =
            f.terms().iter().map(|(e, c)| (index[e], c.clone())).collect();
        vec.sort_by_key(|x| x.0);
        assert_eq!(ech.contains(&vec), b.contains(f));
    }

    #[test]
    fn cyclotomic_coefficients() {
        let v = ["x", "y"];
        let i = FieldValue::imag_unit();
        let f = CPoly::from_terms(2, vec![]);
        assert!(f.is_zero());
        let g = p("x^2 + y^2", &v);
        let l1 = CPoly::linear(&[FieldValue::one(), i.clone()]);
        let l2 = CPoly::linear(&[FieldValue::one(), -&i]);
        assert_eq!(l1.mul(&l2), g);
        let id = CIdeal::new(names(&v), vec![g]).unwrap();
        assert!(id.contains(&l1.mul(&l2).mul(&p("x", &v))));
        assert!(!id.contains(&l1));
    }

    #[test]
    fn substitute_and_eval() {
        let f = p("x^2 - y*z", &["x", "y", "z"]);
        let st = ["s", "t"];
        let img = [p("s*t", &st), p("s^2", &st), p("t^2", &st)];
        assert!(f.substitute(&img).is_zero());
        let pt = [FieldValue::from_int(2), FieldValue::from_int(1), FieldValue::from_int(4)];
        assert!(f.eval(&pt).is_zero());
    }

    #[test]
    fn rational_roots_of_cubic() {
        // (2x - 1)(x + 3)(x^2 + 1)
        let c: Vec<FieldValue> = [-3i64, 5, -1, 5, 2].iter().map(|&k| FieldValue::from_int(k)).collect();
        let (roots, complete) = rational_roots(&c);
        assert!(!complete);
        let mut r: Vec<String> = roots.iter().map(|x| x.to_string()).collect();
        r.sort();
        assert_eq!(r, ["-3", "1/2"]);
        let c: Vec<FieldValue> = [0i64, -1, 0, 1].iter().map(|&k| FieldValue::from_int(k)).collect();
        let (roots, complete) = rational_roots(&c);
        assert!(complete);
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn projective_points_of_four_lines() {
        let names = ["a", "b", "c"];
        // a^2 - b^2 = 0 and c (a + b) = 0 and c^2 - a^2 = 0 in P^2
        let i = CIdeal::parse(&names, &["a^2 - b^2", "c^2 - a^2", "a*b - c^2"]).unwrap();
        let pts = projective_rational_points(&i.gens, 3).unwrap();
        assert!(pts.complete);
        for p in &pts.points {
            for g in &i.gens {
                assert!(g.eval(p).is_zero());
            }
        }
        // a = b, c = +-a; a = -b forces c^2 = -a^2
        assert_eq!(pts.points.len(), 2);
    }
}
