//! Finite groups as multiplication tables, word lengths, Poincare polynomials,
//! and factorization into cyclotomic polynomials.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    element_names: Vec<String>,
    /// Named elements (e.g. a, b, c, d) used to resolve grade labels.
    labels: BTreeMap<String, usize>,
}

/// JSON shape for group import and export.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn from_table(name: &str, table: Vec<Vec<usize>>, element_names: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("group table must be square and nonempty".into()));
        }
        for row in &table {
            let set: BTreeSet<usize> = row.iter().copied().collect();
            if set.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::Invalid("group table is not a Latin square".into()));
            }
        }
        for j in 0..n {
            let set: BTreeSet<usize> = (0..n).map(|i| table[i][j]).collect();
            if set.len() != n {
                return Err(Error::Invalid("group table is not a Latin square".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::Invalid("no identity element".into()))?;
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a][b];
                    for c in 0..n {
                        if table[ab][c] != table[a][table[b][c]] {
                            return Err(Error::Invalid("group table is not associative".into()));
                        }
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|x| (0..n).find(|&y| table[x][y] == identity).unwrap())
            .collect();
        let element_names = if element_names.len() == n {
            element_names
        } else {
            (0..n).map(|i| format!("g{i}")).collect()
        };
        Ok(FiniteGroup {
            name: name.to_string(),
            table,
            identity,
            inverse,
            element_names,
            labels: BTreeMap::new(),
        })
    }

    pub fn from_json(j: &GroupJson) -> Result<Self> {
        if j.table.len() != j.order {
            return Err(Error::Invalid("order does not match the table".into()));
        }
        FiniteGroup::from_table("custom", j.table.clone(), j.names.clone())
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            order: self.order(),
            names: self.element_names.clone(),
            table: self.table.clone(),
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut out = self.identity;
        for _ in 0..k.unsigned_abs() {
            out = self.mul(out, base);
        }
        out
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.element_names[a]
    }

    pub fn label(&self, name: &str) -> Option<usize> {
        self.labels.get(name).copied()
    }

    pub fn set_label(&mut self, name: &str, el: usize) {
        self.labels.insert(name.to_string(), el);
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Resolve a word in the labels, e.g. `abcd`, `a^-1*b*a`, `r*rho^2`.
    pub fn resolve(&self, word: &str) -> Result<usize> {
        let chars: Vec<char> = word.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        let mut names: Vec<&String> = self.labels.keys().collect();
        names.sort_by_key(|s| std::cmp::Reverse(s.chars().count()));
        let mut out = self.identity;
        let mut i = 0;
        if chars == ['e'] && self.labels.get("e").is_none() {
            return Ok(self.identity);
        }
        while i < chars.len() {
            let rest: String = chars[i..].iter().collect();
            let Some(name) = names.iter().find(|n| rest.starts_with(n.as_str())) else {
                return Err(Error::Invalid(format!("cannot resolve '{word}' at '{rest}'")));
            };
            i += name.chars().count();
            let mut el = self.labels[name.as_str()];
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let k: i64 = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad exponent in '{word}'")))?;
                el = self.pow(el, k);
            }
            out = self.mul(out, el);
        }
        Ok(out)
    }

    /// Name an element as a product of distinct labels in alphabetical order
    /// (e.g. `abcd`), falling back to the table name.
    pub fn describe(&self, el: usize) -> String {
        if el == self.identity {
            return "e".into();
        }
        let labels: Vec<(&String, usize)> = self.labels.iter().map(|(k, &v)| (k, v)).collect();
        let mut best: Option<String> = None;
        for mask in 1u32..(1 << labels.len()) {
            let mut x = self.identity;
            let mut word = String::new();
            for (k, (name, v)) in labels.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    x = self.mul(x, *v);
                    word.push_str(name);
                }
            }
            if x == el {
                let better = match &best {
                    None => true,
                    Some(b) => (word.len(), &word) < (b.len(), b),
                };
                if better {
                    best = Some(word);
                }
            }
        }
        best.unwrap_or_else(|| self.element_names[el].clone())
    }

    /// Smallest subgroup containing `subset`.
    pub fn closure(&self, subset: &[usize]) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut queue: VecDeque<usize> = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in subset {
                let y = self.mul(x, s);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn generates(&self, subset: &[usize]) -> bool {
        self.closure(subset).len() == self.order()
    }

    /// Word length of every element relative to `gens` (breadth-first search).
    pub fn length_function(&self, gens: &[usize]) -> Result<Vec<usize>> {
        if self.order() == 1 {
            return Ok(vec![0]);
        }
        if gens.contains(&self.identity) {
            return Err(Error::Invalid("the identity cannot be a generator".into()));
        }
        let mut len = vec![usize::MAX; self.order()];
        len[self.identity] = 0;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if len[y] == usize::MAX {
                    len[y] = len[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if len.contains(&usize::MAX) {
            return Err(Error::NotGenerating);
        }
        Ok(len)
    }

    pub fn poincare_polynomial(&self, gens: &[usize]) -> Result<IntPolynomial> {
        let len = self.length_function(gens)?;
        let top = *len.iter().max().unwrap();
        let mut c = vec![0i64; top + 1];
        for l in len {
            c[l] += 1;
        }
        Ok(IntPolynomial::new(c))
    }
}

/// C_m x| C_2 with the involution acting by a -> a^r (r^2 = 1 mod m).
/// Element (i, j) is a^i b^j.
pub fn semidirect_cm_c2(m: usize, r: usize) -> Result<FiniteGroup> {
    if m == 0 || (r * r) % m != 1 % m {
        return Err(Error::Invalid(format!("{r} is not an involutive exponent mod {m}")));
    }
    let n = 2 * m;
    let idx = |i: usize, j: usize| j * m + i;
    let mut table = vec![vec![0; n]; n];
    for j1 in 0..2 {
        for i1 in 0..m {
            for j2 in 0..2 {
                for i2 in 0..m {
                    let twisted = if j1 == 1 { (r * i2) % m } else { i2 };
                    table[idx(i1, j1)][idx(i2, j2)] = idx((i1 + twisted) % m, (j1 + j2) % 2);
                }
            }
        }
    }
    let names = (0..n)
        .map(|k| {
            let (i, j) = (k % m, k / m);
            match (i, j) {
                (0, 0) => "e".to_string(),
                (0, 1) => "y".to_string(),
                (1, 0) => "x".to_string(),
                (i, 0) => format!("x^{i}"),
                (1, 1) => "x*y".to_string(),
                (i, _) => format!("x^{i}*y"),
            }
        })
        .collect();
    let mut g = FiniteGroup::from_table(&format!("C{m}xC2[{r}]"), table, names)?;
    g.set_label("x", idx(1 % m, 0));
    g.set_label("y", idx(0, 1));
    Ok(g)
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Invalid("cyclic group of order 0".into()));
    }
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{i}"),
        })
        .collect();
    let mut g = FiniteGroup::from_table(&format!("C{n}"), table, names)?;
    if n > 1 {
        g.set_label("g", 1);
    }
    Ok(g)
}

/// Dihedral group of the given order (rotations rho, reflection r, r rho r = rho^-1).
pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 4 || order % 2 != 0 {
        return Err(Error::Invalid("dihedral order must be even and at least 4".into()));
    }
    let m = order / 2;
    let mut g = semidirect_cm_c2(m, m - 1)?;
    g.name = format!("D{order}");
    let rho = g.label("x").unwrap();
    let r = g.label("y").unwrap();
    g.set_label("rho", rho);
    g.set_label("r", r);
    Ok(g)
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let (n, m) = (g.order(), h.order());
    let table = (0..n * m)
        .map(|a| {
            (0..n * m)
                .map(|b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m))
                .collect()
        })
        .collect();
    let names = (0..n * m)
        .map(|a| format!("({},{})", g.element_name(a / m), h.element_name(a % m)))
        .collect();
    FiniteGroup::from_table(&format!("{}x{}", g.name, h.name), table, names)
}

fn with_abcd(mut g: FiniteGroup, name: &str, a: usize, b: usize) -> FiniteGroup {
    g.name = name.to_string();
    let c = g.mul(a, a);
    let d = g.mul(c, c);
    g.set_label("a", a);
    g.set_label("b", b);
    g.set_label("c", c);
    g.set_label("d", d);
    g.labels.remove("x");
    g.labels.remove("y");
    g
}

/// The modular group of order 16 with Magma's generators: a of order 8, b of
/// order 2, a^-1 b a = b d, c = a^2, d = a^4.
pub fn m16() -> FiniteGroup {
    let g = semidirect_cm_c2(8, 5).unwrap();
    let (x, y) = (g.label("x").unwrap(), g.label("y").unwrap());
    with_abcd(g, "M16", x, y)
}

/// The semidihedral group of order 16 with Magma's polycyclic generators:
/// a = x y, b = y, c = x^2, d = x^4 = a^2, where y x y = x^3.
pub fn sd16() -> FiniteGroup {
    let mut g = semidirect_cm_c2(8, 3).unwrap();
    let (x, y) = (g.label("x").unwrap(), g.label("y").unwrap());
    g.name = "SD16".into();
    let a = g.mul(x, y);
    let c = g.mul(x, x);
    g.set_label("a", a);
    g.set_label("b", y);
    g.set_label("c", c);
    g.set_label("d", g.mul(c, c));
    g.labels.remove("x");
    g.labels.remove("y");
    g
}

pub fn d8() -> FiniteGroup {
    dihedral(8).unwrap()
}

/// M16 labelled for the rank-two example: a of order 8 and b with a^2 = b^2
/// and (ab)^2 = e.
pub fn modular_craw() -> FiniteGroup {
    let g = semidirect_cm_c2(8, 5).unwrap();
    let (x, y) = (g.label("x").unwrap(), g.label("y").unwrap());
    let b = g.mul(g.pow(x, 7), y);
    let mut g = with_abcd(g, "modular_order16_craw", x, b);
    g.labels.remove("c");
    g.labels.remove("d");
    g
}

pub fn build_group(kind: &str) -> Result<FiniteGroup> {
    let lower = kind.to_ascii_lowercase();
    match lower.as_str() {
        "m16" => return Ok(m16()),
        "sd16" => return Ok(sd16()),
        "d8" => return Ok(d8()),
        "modular_order16_craw" => return Ok(modular_craw()),
        _ => {}
    }
    let num = |s: &str| -> Result<usize> {
        s.parse().map_err(|_| Error::Invalid(format!("bad group parameter in '{kind}'")))
    };
    if let Some(n) = lower.strip_prefix("cyclic") {
        return cyclic(num(n.trim_matches(|c| c == '(' || c == ')'))?);
    }
    if let Some(n) = lower.strip_prefix('c') {
        if let Ok(n) = n.parse::<usize>() {
            return cyclic(n);
        }
    }
    if let Some(n) = lower.strip_prefix("dihedral") {
        return dihedral(num(n.trim_matches(|c| c == '(' || c == ')'))?);
    }
    if let Some(n) = lower.strip_prefix('d') {
        if let Ok(n) = n.parse::<usize>() {
            return dihedral(n);
        }
    }
    Err(Error::UnknownKey(kind.to_string()))
}

/// Integer polynomial, coefficient of t^k at index k, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial(pub Vec<i64>);

impl IntPolynomial {
    pub fn new(mut c: Vec<i64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        IntPolynomial(c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn mul(&self, o: &IntPolynomial) -> IntPolynomial {
        if self.0.is_empty() || o.0.is_empty() {
            return IntPolynomial(vec![]);
        }
        let mut c = vec![0i64; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }

    pub fn pow(&self, k: usize) -> IntPolynomial {
        (0..k).fold(IntPolynomial(vec![1]), |acc, _| acc.mul(self))
    }

    /// Exact quotient by a monic divisor, if the remainder is zero.
    pub fn div_exact(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        let dd = d.degree()?;
        if *d.0.last().unwrap() != 1 {
            return None;
        }
        let Some(n) = self.degree() else {
            return Some(IntPolynomial(vec![]));
        };
        if n < dd {
            return None;
        }
        let mut rem = self.0.clone();
        let mut q = vec![0i64; n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = rem[k + dd];
            q[k] = c;
            if c != 0 {
                for (j, &dj) in d.0.iter().enumerate() {
                    rem[k + j] -= c * dj;
                }
            }
        }
        if rem.iter().all(|&x| x == 0) {
            Some(IntPolynomial::new(q))
        } else {
            None
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mon = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            parts.push(match (c, k) {
                (_, 0) => c.to_string(),
                (1, _) => mon,
                (-1, _) => format!("-{mon}"),
                _ => format!("{c}*{mon}"),
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// The n-th cyclotomic polynomial.
pub fn cyclotomic(n: usize) -> IntPolynomial {
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    let mut p = IntPolynomial::new(num);
    for d in 1..n {
        if n % d == 0 {
            p = p.div_exact(&cyclotomic(d)).expect("cyclotomic divisibility");
        }
    }
    p
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count()
}

/// Factor into cyclotomic polynomials as `(n, multiplicity)` pairs, or `None`.
pub fn cyclotomic_factorization(p: &IntPolynomial) -> Option<Vec<(usize, usize)>> {
    let deg = p.degree()?;
    if p.0[0].abs() != 1 {
        return None;
    }
    if deg == 0 {
        return if p.0[0] == 1 { Some(vec![]) } else { None };
    }
    let bound = 2 * deg * deg;
    let cands: Vec<(usize, IntPolynomial)> = (1..=bound.max(2))
        .filter(|&n| euler_phi(n) <= deg)
        .map(|n| (n, cyclotomic(n)))
        .collect();

    fn search(
        p: &IntPolynomial,
        cands: &[(usize, IntPolynomial)],
        start: usize,
        acc: &mut Vec<usize>,
    ) -> bool {
        match p.degree() {
            Some(0) => return p.0[0] == 1,
            None => return false,
            _ => {}
        }
        // Phi_1 = t - 1 has constant term -1; the sign of the leading
        // coefficient must still work out, which the final check enforces.
        for k in start..cands.len() {
            let (n, phi) = &cands[k];
            if phi.degree().unwrap() > p.degree().unwrap() {
                continue;
            }
            if let Some(q) = p.div_exact(phi) {
                acc.push(*n);
                if search(&q, cands, k, acc) {
                    return true;
                }
                acc.pop();
            }
        }
        false
    }

    let mut acc = Vec::new();
    if !search(p, &cands, 0, &mut acc) {
        return None;
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for n in acc {
        *counts.entry(n).or_default() += 1;
    }
    Some(counts.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn els(g: &FiniteGroup, words: &[&str]) -> Vec<usize> {
        words.iter().map(|w| g.resolve(w).unwrap()).collect()
    }

    #[test]
    fn m16_structure() {
        let g = m16();
        let a = g.label("a").unwrap();
        let b = g.label("b").unwrap();
        assert_eq!(g.element_order(a), 8);
        assert_eq!(g.element_order(b), 2);
        // a^-1 b a = b d
        assert_eq!(g.resolve("a^-1ba").unwrap(), g.resolve("bd").unwrap());
        assert!(!g.is_abelian());
    }

    #[test]
    fn sd16_magma_relations() {
        let g = sd16();
        let id = g.identity();
        assert_eq!(g.resolve("a^2").unwrap(), g.resolve("d").unwrap());
        assert_eq!(g.resolve("c^2").unwrap(), g.resolve("d").unwrap());
        assert_eq!(g.resolve("b^2").unwrap(), id);
        assert_eq!(g.resolve("d^2").unwrap(), id);
        assert_eq!(g.resolve("a^-1ba").unwrap(), g.resolve("bc").unwrap());
        assert_eq!(g.resolve("a^-1ca").unwrap(), g.resolve("cd").unwrap());
        assert_eq!(g.resolve("b^-1cb").unwrap(), g.resolve("cd").unwrap());
    }

    #[test]
    fn craw_labels() {
        let g = modular_craw();
        let (a, b) = (g.label("a").unwrap(), g.label("b").unwrap());
        assert_eq!(g.mul(a, a), g.mul(b, b));
        let ab = g.mul(a, b);
        assert_eq!(g.element_order(ab), 2);
        assert_eq!(g.conjugate(ab, a), g.pow(a, 5));
        let p = g.poincare_polynomial(&[a, b]).unwrap();
        assert_eq!(p.0, vec![1, 2, 3, 4, 3, 2, 1]);
        assert_eq!(cyclotomic_factorization(&p), Some(vec![(2, 2), (4, 2)]));
    }

    #[test]
    fn dihedral_relation() {
        let g = d8();
        let r = g.label("r").unwrap();
        let rho = g.label("rho").unwrap();
        assert_eq!(g.element_order(r), 2);
        assert_eq!(g.element_order(rho), 4);
        assert_eq!(g.mul(r, rho), g.mul(g.pow(rho, 3), r));
        let gens = els(&g, &["r", "r*rho", "r*rho^2"]);
        let p = g.poincare_polynomial(&gens).unwrap();
        assert_eq!(p, IntPolynomial(vec![1, 3, 3, 1]));
    }

    #[test]
    fn describe_uses_labels() {
        let g = m16();
        for w in ["acd", "ab", "abc", "bcd", "e", "c"] {
            assert_eq!(g.describe(g.resolve(w).unwrap()), w);
        }
        let s = sd16();
        let names: BTreeSet<String> = (0..16).map(|x| s.describe(x)).collect();
        assert_eq!(names.len(), 16);
    }

    #[test]
    fn closures() {
        let g = m16();
        assert_eq!(g.closure(&els(&g, &["a", "ab"])).len(), 16);
        assert_eq!(g.closure(&[]).len(), 1);
        let s = sd16();
        // oracle: the cyclic orbit of a
        let a = s.label("a").unwrap();
        let mut orbit = BTreeSet::new();
        let mut x = a;
        for _ in 0..16 {
            orbit.insert(x);
            x = s.mul(x, a);
        }
        assert_eq!(s.closure(&[a]), orbit);
        assert_eq!(orbit.len(), 4);
        let x = s.resolve("ab").unwrap();
        assert_eq!(s.closure(&[x]).len(), 8);
        assert_eq!(cyclic(1).unwrap().order(), 1);
    }

    #[test]
    fn stated_poincare_polynomials() {
        let g = m16();
        let p = g.poincare_polynomial(&els(&g, &["a", "acd", "ab", "abc"])).unwrap();
        assert_eq!(p, IntPolynomial(vec![1, 4, 6, 4, 1]));
        assert_eq!(cyclotomic_factorization(&p), Some(vec![(2, 4)]));
        let s = sd16();
        let p = s.poincare_polynomial(&els(&s, &["b", "bc", "ab", "abcd"])).unwrap();
        assert_eq!(p, IntPolynomial(vec![1, 4, 6, 4, 1]));
        let all: Vec<usize> = (0..16).filter(|&x| x != g.identity()).collect();
        let p = g.poincare_polynomial(&all).unwrap();
        assert_eq!(p, IntPolynomial(vec![1, 15]));
        assert_eq!(cyclic(1).unwrap().poincare_polynomial(&[]).unwrap().0, vec![1]);
    }

    #[test]
    fn lengths_are_subadditive() {
        let g = sd16();
        let gens = els(&g, &["b", "bc", "ab", "abcd"]);
        let l = g.length_function(&gens).unwrap();
        for x in 0..16 {
            for y in 0..16 {
                assert!(l[g.mul(x, y)] <= l[x] + l[y]);
            }
        }
        assert_eq!(g.length_function(&els(&g, &["c"])), Err(Error::NotGenerating));
    }

    #[test]
    fn cyclotomic_values_at_one() {
        for n in 2..40usize {
            let v = cyclotomic(n).eval(1);
            let mut m = n;
            let mut p = 2;
            while m % p != 0 {
                p += 1;
            }
            while m % p == 0 {
                m /= p;
            }
            let expect = if m == 1 { p as i64 } else { 1 };
            assert_eq!(v, expect, "n = {n}");
        }
    }

    #[test]
    fn not_cyclotomic() {
        let p = IntPolynomial(vec![1, 1, 0, 1]);
        assert_eq!(cyclotomic_factorization(&p), None);
        // oracle: no product of Phi_n (n <= 18) of total degree 3 equals it
        let phis: Vec<IntPolynomial> = (1..=18).map(cyclotomic).collect();
        for a in &phis {
            for b in &phis {
                for c in &phis {
                    for prod in [a.clone(), a.mul(b), a.mul(b).mul(c)] {
                        assert_ne!(prod, p);
                    }
                }
            }
        }
    }

    #[test]
    fn factorizer_matches_exhaustive_search() {
        // all products of cyclotomics of degree <= 8 from a small pool
        let pool: Vec<usize> = (1..=30).filter(|&n| euler_phi(n) <= 8).collect();
        let mut products: BTreeMap<Vec<i64>, ()> = BTreeMap::new();
        fn rec(pool: &[usize], start: usize, cur: IntPolynomial, out: &mut BTreeMap<Vec<i64>, ()>) {
            out.insert(cur.0.clone(), ());
            for k in start..pool.len() {
                let phi = cyclotomic(pool[k]);
                if cur.degree().unwrap() + phi.degree().unwrap() <= 8 {
                    rec(pool, k, cur.mul(&phi), out);
                }
            }
        }
        rec(&pool, 0, IntPolynomial(vec![1]), &mut products);
        let mut checked = 0;
        let mut coeffs = vec![0i64; 9];
        // enumerate polynomials with constant term 1, coefficients in [0,5], degree <= 4
        fn next(c: &mut [i64]) -> bool {
            for x in c.iter_mut().skip(1).take(4) {
                if *x < 5 {
                    *x += 1;
                    return true;
                }
                *x = 0;
            }
            false
        }
        coeffs[0] = 1;
        loop {
            let p = IntPolynomial::new(coeffs.clone());
            let fac = cyclotomic_factorization(&p).is_some();
            assert_eq!(fac, products.contains_key(&p.0), "{p}");
            checked += 1;
            if !next(&mut coeffs) {
                break;
            }
        }
        assert_eq!(checked, 6usize.pow(4));
    }
}
