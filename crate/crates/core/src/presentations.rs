//! Free-algebra data model, deglex monomial orders, and the presentation text format.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exactnum::{Cyclo8, FieldKind, FieldValue, Rational};
use crate::linalg::{Echelon, Matrix, SparseVec};

/// A monomial in the free algebra: generator indices, left to right.
pub type Word = SmallVec<[u8; 16]>;

pub fn word(ix: &[u8]) -> Word {
    Word::from_slice(ix)
}

/// Noncommutative polynomial with nonzero coefficients only.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NCPoly {
    pub terms: BTreeMap<Word, FieldValue>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn constant(c: FieldValue) -> Self {
        NCPoly::monomial(Word::new(), c)
    }

    pub fn one() -> Self {
        NCPoly::constant(FieldValue::one())
    }

    pub fn monomial(w: Word, c: FieldValue) -> Self {
        let mut p = NCPoly::zero();
        if !c.is_zero() {
            p.terms.insert(w, c);
        }
        p
    }

    pub fn var(i: usize) -> Self {
        NCPoly::monomial(word(&[i as u8]), FieldValue::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, FieldValue)>) -> Self {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
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

    pub fn add_term(&mut self, w: Word, c: &FieldValue) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add(&self, o: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }

    pub fn scale(&self, c: &FieldValue) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, o: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(a * b));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> NCPoly {
        let mut out = NCPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Degree of each word under the given generator weights.
    pub fn degrees(&self, weights: &[u32]) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|w| word_degree(w, weights)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        self.degrees(weights).len() <= 1
    }

    /// Weighted degree of a homogeneous polynomial (0 for the zero polynomial).
    pub fn degree(&self, weights: &[u32]) -> u32 {
        self.degrees(weights).last().copied().unwrap_or(0)
    }

    pub fn field(&self) -> FieldKind {
        self.terms
            .values()
            .map(FieldValue::kind)
            .fold(FieldKind::Rationals, FieldKind::join)
    }

    /// Largest word under `order` with its coefficient.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Word, &FieldValue)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn monic(&self, order: &MonomialOrder) -> NCPoly {
        match self.leading(order) {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => NCPoly::zero(),
        }
    }

    /// Terms sorted from largest to smallest word.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Word, FieldValue)> {
        let mut t: Vec<(Word, FieldValue)> =
            self.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        t.sort_by(|a, b| order.compare(&b.0, &a.0));
        t
    }

    /// Substitute a polynomial for each generator.
    pub fn substitute(&self, images: &[NCPoly]) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut t = NCPoly::constant(c.clone());
            for &g in w.iter() {
                t = t.mul(&images[g as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    pub fn to_text(&self, names: &[String], order: &MonomialOrder) -> String {
        format_poly(&self.sorted_terms(order), names)
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=16).map(|i| format!("x{i}")).collect();
        let t: Vec<(Word, FieldValue)> = self.terms.iter().rev().map(|(w, c)| (w.clone(), c.clone())).collect();
        f.write_str(&format_poly(&t, &names))
    }
}

pub fn word_degree(w: &[u8], weights: &[u32]) -> u32 {
    w.iter().map(|&g| weights.get(g as usize).copied().unwrap_or(1)).sum()
}

pub fn format_word(w: &[u8], names: &[String]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let name = &names[w[i] as usize];
        if j - i == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
    parts.join("*")
}

fn format_poly(terms: &[(Word, FieldValue)], names: &[String]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (w, c)) in terms.iter().enumerate() {
        let neg = c.looks_negative();
        let mag = if neg { -c } else { c.clone() };
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if w.is_empty() {
            s.push_str(&mag.coefficient_text());
        } else {
            if !mag.is_one() {
                s.push_str(&mag.coefficient_text());
                s.push('*');
            }
            s.push_str(&format_word(w, names));
        }
    }
    s
}

/// Degree-first, then left-lexicographic order by variable priority.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    /// Generator indices from lowest to highest.
    pub priority: Vec<usize>,
    /// `rank[g]` is the position of generator `g` in `priority`.
    pub rank: Vec<u8>,
    /// Generator degrees used for the degree comparison.
    pub weights: Vec<u32>,
}

impl MonomialOrder {
    pub fn deglex(priority: Vec<usize>, weights: Vec<u32>) -> Result<Self> {
        let n = priority.len();
        let mut rank = vec![u8::MAX; n];
        for (pos, &g) in priority.iter().enumerate() {
            if g >= n || rank[g] != u8::MAX {
                return Err(Error::Invalid("variable priority is not a permutation".into()));
            }
            rank[g] = pos as u8;
        }
        if weights.len() != n {
            return Err(Error::Invalid("weight vector has the wrong length".into()));
        }
        Ok(MonomialOrder {
            priority,
            rank,
            weights,
        })
    }

    /// x1 < x2 < ... < xn, all in degree 1.
    pub fn standard(n: usize) -> Self {
        MonomialOrder::deglex((0..n).collect(), vec![1; n]).unwrap()
    }

    pub fn compare(&self, u: &[u8], v: &[u8]) -> Ordering {
        word_degree(u, &self.weights)
            .cmp(&word_degree(v, &self.weights))
            .then(u.len().cmp(&v.len()))
            .then_with(|| {
                for (a, b) in u.iter().zip(v.iter()) {
                    let c = self.rank[*a as usize].cmp(&self.rank[*b as usize]);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            })
    }
}

pub fn compare_words(o: &MonomialOrder, u: &[u8], v: &[u8]) -> Ordering {
    o.compare(u, v)
}

/// A finitely presented graded algebra k<x_1..x_n>/(relations).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub field: FieldKind,
    pub names: Vec<String>,
    pub degrees: Vec<u32>,
    pub relations: Vec<NCPoly>,
    pub order: MonomialOrder,
}

impl Presentation {
    pub fn new(names: Vec<String>, relations: Vec<NCPoly>) -> Result<Self> {
        let n = names.len();
        let field = relations
            .iter()
            .map(NCPoly::field)
            .fold(FieldKind::Rationals, FieldKind::join);
        let p = Presentation {
            field,
            names,
            degrees: vec![1; n],
            relations,
            order: MonomialOrder::standard(n),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn free(names: &[&str]) -> Self {
        Presentation::new(names.iter().map(|s| s.to_string()).collect(), vec![]).unwrap()
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn with_order(mut self, priority_names: &[&str]) -> Result<Self> {
        let pr = priority_names
            .iter()
            .map(|n| self.gen_index(n))
            .collect::<Result<Vec<_>>>()?;
        self.order = MonomialOrder::deglex(pr, self.degrees.clone())?;
        Ok(self)
    }

    pub fn with_relations(&self, relations: Vec<NCPoly>) -> Result<Self> {
        let mut p = self.clone();
        p.relations = relations;
        p.field = p
            .relations
            .iter()
            .map(NCPoly::field)
            .fold(self.field, FieldKind::join);
        p.validate()?;
        Ok(p)
    }

    /// Append elements to the relations (quotient by more elements).
    pub fn quotient(&self, extra: &[NCPoly]) -> Result<Self> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        self.with_relations(rels)
    }

    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        for (i, a) in self.names.iter().enumerate() {
            if self.names[..i].contains(a) {
                return Err(Error::Invalid(format!("duplicate generator name '{a}'")));
            }
        }
        for r in &self.relations {
            if !r.is_homogeneous(&self.degrees) {
                return Err(Error::Inhomogeneous(r.to_text(&self.names, &self.order)));
            }
        }
        Ok(())
    }

    /// Parse a polynomial in this presentation's generators.
    pub fn parse_poly(&self, text: &str) -> Result<NCPoly> {
        let mut p = ExprParser::new(text, &self.names, 0, 0)?;
        let poly = p.parse_full()?;
        Ok(poly)
    }

    pub fn poly_text(&self, f: &NCPoly) -> String {
        f.to_text(&self.names, &self.order)
    }

    /// Canonical text in the presentation grammar.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("field {}\n", self.field.name()));
        s.push_str(&format!("vars {}\n", self.names.join(" ")));
        if self.degrees.iter().any(|&d| d != 1) {
            let d: Vec<String> = self
                .names
                .iter()
                .zip(&self.degrees)
                .map(|(n, d)| format!("{n}={d}"))
                .collect();
            s.push_str(&format!("deg {}\n", d.join(" ")));
        }
        let pr: Vec<&str> = self.order.priority.iter().map(|&g| self.names[g].as_str()).collect();
        s.push_str(&format!("order deglex {}\n", pr.join(" < ")));
        for r in &self.relations {
            s.push_str(&format!("rel {}\n", self.poly_text(r)));
        }
        s
    }

    /// Relations of a fixed degree as sparse coefficient rows over an index of words.
    fn degree_rows(&self, d: u32, index: &mut BTreeMap<Word, usize>) -> Vec<SparseVec> {
        let rows: Vec<Vec<(Word, FieldValue)>> = self
            .relations
            .iter()
            .filter(|r| !r.is_zero() && r.degree(&self.degrees) == d)
            .map(|r| r.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect())
            .collect();
        rows.into_iter()
            .map(|t| {
                crate::linalg::sparse_from_pairs(t.into_iter().map(|(w, c)| {
                    let n = index.len();
                    (*index.entry(w).or_insert(n), c)
                }))
            })
            .collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// True iff the two relation sets span the same subspace in every degree.
pub fn relation_span_equal(p: &Presentation, q: &Presentation) -> bool {
    if p.names.len() != q.names.len() {
        return false;
    }
    let mut degs: Vec<u32> = p
        .relations
        .iter()
        .chain(q.relations.iter())
        .filter(|r| !r.is_zero())
        .map(|r| r.degree(&p.degrees))
        .collect();
    degs.sort_unstable();
    degs.dedup();
    for d in degs {
        let mut index = BTreeMap::new();
        let rp = p.degree_rows(d, &mut index);
        let rq = q.degree_rows(d, &mut index);
        let mut ep = Echelon::new();
        for r in &rp {
            ep.insert(r);
        }
        let mut eq = Echelon::new();
        for r in &rq {
            eq.insert(r);
        }
        if ep.rank() != eq.rank() || !rq.iter().all(|r| ep.contains(r)) {
            return false;
        }
    }
    true
}

/// Rewrite the relations in new generators `y = A x` (row `k` of `A` gives `y_k`).
/// The new generators keep the old names.
pub fn apply_linear_substitution(p: &Presentation, a: &Matrix) -> Result<Presentation> {
    let n = p.ngens();
    if a.rows != n || a.cols != n {
        return Err(Error::Invalid("substitution matrix has the wrong size".into()));
    }
    if p.degrees.iter().any(|&d| d != 1) {
        return Err(Error::Invalid("linear substitution needs degree-one generators".into()));
    }
    let inv = a.inverse()?;
    // x_j = sum_k inv[j][k] y_k
    let images: Vec<NCPoly> = (0..n)
        .map(|j| {
            NCPoly::from_terms((0..n).map(|k| (word(&[k as u8]), inv.data[j][k].clone())))
        })
        .collect();
    let rels = p.relations.iter().map(|r| r.substitute(&images)).collect();
    let mut out = p.with_relations(rels)?;
    for row in &a.data {
        for x in row {
            out.field = out.field.join(x.kind());
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(num_bigint::BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Num(s.parse().expect("digits")),
                line,
                col,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line,
                col,
            });
        } else if "+-*/^()".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line,
                col,
            });
            i += 1;
        } else {
            return Err(Error::Parse {
                line,
                col,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct ExprParser<'a> {
    toks: Vec<Token>,
    pos: usize,
    names: &'a [String],
    line: usize,
    end_col: usize,
}

impl<'a> ExprParser<'a> {
    fn new(text: &str, names: &'a [String], line: usize, col0: usize) -> Result<Self> {
        Ok(ExprParser {
            toks: lex(text, line, col0)?,
            pos: 0,
            names,
            line,
            end_col: col0 + text.chars().count() + 1,
        })
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = match self.toks.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => (self.line, self.end_col),
        };
        Err(Error::Parse {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_full(&mut self) -> Result<NCPoly> {
        let p = self.expr()?;
        if self.pos != self.toks.len() {
            return self.err("unexpected trailing input");
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut acc = if self.eat('-') {
            self.term()?.scale(&FieldValue::from_int(-1))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NCPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat('/') {
                let d = self.factor()?;
                let scalar = match d.terms.len() {
                    1 => d.terms.get(&Word::new()).cloned(),
                    _ => None,
                };
                match scalar {
                    Some(c) => acc = acc.scale(&c.inv()?),
                    None => return self.err("division by a non-scalar"),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<NCPoly> {
        let base = self.primary()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    Ok(base.pow(k))
                }
                _ => self.err("expected an integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<NCPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(NCPoly::constant(FieldValue::Q(Rational::new(n, 1)?)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(g) = self.names.iter().position(|n| *n == name) {
                    Ok(NCPoly::var(g))
                } else if name == "i" {
                    Ok(NCPoly::constant(FieldValue::Z8(Cyclo8::imag_unit())))
                } else if name == "zeta8" || name == "zeta" {
                    Ok(NCPoly::constant(FieldValue::Z8(Cyclo8::zeta_pow(1))))
                } else {
                    self.pos -= 1;
                    Err(Error::UnknownGenerator(name))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(self.primary()?.scale(&FieldValue::from_int(-1)))
            }
            _ => self.err("expected a number, generator or '('"),
        }
    }
}

/// Parse a scalar expression (no generators).
pub fn parse_scalar_expr(text: &str) -> Result<FieldValue> {
    let mut p = ExprParser::new(text, &[], 1, 0)?;
    let poly = p.parse_full()?;
    match poly.terms.len() {
        0 => Ok(FieldValue::zero()),
        1 if poly.terms.contains_key(&Word::new()) => Ok(poly.terms[&Word::new()].clone()),
        _ => Err(Error::Invalid(format!("'{text}' is not a scalar"))),
    }
}

/// Parse polynomial text over the given generator names.
pub fn parse_poly_in(text: &str, names: &[String]) -> Result<NCPoly> {
    ExprParser::new(text, names, 1, 0)?.parse_full()
}

/// Parse the line-oriented presentation grammar.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut field: Option<FieldKind> = None;
    let mut names: Option<Vec<String>> = None;
    let mut degs: Vec<(String, u32, usize)> = Vec::new();
    let mut order: Option<(Vec<String>, usize)> = None;
    let mut rels: Vec<(String, usize, usize)> = Vec::new();

    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for stmt in body.split(';') {
            let stmt_off = offset;
            offset += stmt.chars().count() + 1;
            let trimmed = stmt.trim_start();
            let lead_ws = stmt.chars().count() - trimmed.chars().count();
            let trimmed = trimmed.trim_end();
            if trimmed.is_empty() {
                continue;
            }
            let (kw, rest) = match trimmed.find(char::is_whitespace) {
                Some(k) => (&trimmed[..k], &trimmed[k..]),
                None => (trimmed, ""),
            };
            let rest_col = stmt_off + lead_ws + kw.chars().count();
            let perr = |msg: String| Error::Parse {
                line,
                col: stmt_off + lead_ws + 1,
                msg,
            };
            match kw {
                "field" => {
                    let f = rest.trim().replace(' ', "");
                    field = Some(match f.as_str() {
                        "QQ" => FieldKind::Rationals,
                        "QQ(zeta8)" => FieldKind::Zeta8,
                        _ => return Err(perr(format!("unknown field '{f}'"))),
                    });
                }
                "vars" => {
                    let v: Vec<String> = rest
                        .split(|c: char| c.is_whitespace() || c == ',')
                        .filter(|s| !s.is_empty())
                        .map(String::from)
                        .collect();
                    for n in &v {
                        if !n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                            || !n.chars().all(|c| c.is_alphanumeric() || c == '_')
                        {
                            return Err(perr(format!("invalid generator name '{n}'")));
                        }
                    }
                    names = Some(v);
                }
                "deg" => {
                    for item in rest.split_whitespace() {
                        let (n, d) = item
                            .split_once('=')
                            .ok_or_else(|| perr(format!("expected name=degree, got '{item}'")))?;
                        let d: u32 = d
                            .parse()
                            .map_err(|_| perr(format!("invalid degree '{d}'")))?;
                        if d == 0 {
                            return Err(perr("generator degrees must be positive".into()));
                        }
                        degs.push((n.to_string(), d, line));
                    }
                }
                "order" => {
                    let r = rest.trim();
                    let r = r
                        .strip_prefix("deglex")
                        .ok_or_else(|| perr("only deglex orders are supported".into()))?;
                    let pr: Vec<String> = r
                        .split('<')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect();
                    order = Some((pr, line));
                }
                "rel" => rels.push((rest.to_string(), line, rest_col)),
                "rels" => {
                    let mut col = rest_col;
                    for piece in rest.split(',') {
                        if !piece.trim().is_empty() {
                            rels.push((piece.to_string(), line, col));
                        }
                        col += piece.chars().count() + 1;
                    }
                }
                _ => return Err(perr(format!("unknown statement '{kw}'"))),
            }
        }
    }

    let names = names.ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "missing 'vars' statement".into(),
    })?;
    let n = names.len();
    let mut degrees = vec![1u32; n];
    for (nm, d, line) in degs {
        let g = names.iter().position(|x| *x == nm).ok_or(Error::Parse {
            line,
            col: 1,
            msg: format!("unknown generator '{nm}' in deg"),
        })?;
        degrees[g] = d;
    }
    let priority = match order {
        Some((pr, line)) => {
            let mut ix = Vec::new();
            for nm in &pr {
                ix.push(names.iter().position(|x| x == nm).ok_or(Error::Parse {
                    line,
                    col: 1,
                    msg: format!("unknown generator '{nm}' in order"),
                })?);
            }
            if ix.len() != n {
                return Err(Error::Parse {
                    line,
                    col: 1,
                    msg: "order must list every generator exactly once".into(),
                });
            }
            ix
        }
        None => (0..n).collect(),
    };
    let order = MonomialOrder::deglex(priority, degrees.clone()).map_err(|e| Error::Parse {
        line: 1,
        col: 1,
        msg: e.to_string(),
    })?;

    let mut relations = Vec::new();
    let mut inferred = FieldKind::Rationals;
    for (txt, line, col) in rels {
        let mut p = ExprParser::new(&txt, &names, line, col)?;
        let poly = p.parse_full().map_err(|e| match e {
            Error::UnknownGenerator(g) => Error::Parse {
                line,
                col: col + 1,
                msg: format!("unknown generator '{g}'"),
            },
            other => other,
        })?;
        if !poly.is_homogeneous(&degrees) {
            return Err(Error::Inhomogeneous(format!(
                "line {line}: '{}' mixes degrees {:?}",
                txt.trim(),
                poly.degrees(&degrees)
            )));
        }
        inferred = inferred.join(poly.field());
        relations.push(poly);
    }
    let field = match field {
        Some(FieldKind::Rationals) if inferred == FieldKind::Zeta8 => {
            return Err(Error::Parse {
                line: 1,
                col: 1,
                msg: "field QQ declared but a relation uses zeta8".into(),
            })
        }
        Some(f) => f,
        None => inferred,
    };
    let p = Presentation {
        field,
        names,
        degrees,
        relations,
        order,
    };
    p.validate()?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const S_TEXT: &str = "field QQ
vars x1 x2 x3 x4
order deglex x3 < x2 < x1 < x4
rel x1*x2 - x3^2
rel x4^2 - x2*x1
rel x1*x3 - x2*x4
rel x4*x1 - x3*x2
rel x2*x3 - x3*x1
rel x4*x2 - x1*x4
";

    #[test]
    fn parse_s() {
        let p = parse_presentation(S_TEXT).unwrap();
        assert_eq!(p.ngens(), 4);
        assert_eq!(p.relations.len(), 6);
        assert_eq!(p.field, FieldKind::Rationals);
    }

    #[test]
    fn parse_free_one_generator() {
        let p = parse_presentation("vars x; rels ;").unwrap();
        assert_eq!(p.ngens(), 1);
        assert!(p.relations.is_empty());
    }

    #[test]
    fn inhomogeneous_rejected() {
        let e = parse_presentation("vars x1 x2 x3\nrel x1*x2 - x3").unwrap_err();
        match e {
            Error::Inhomogeneous(msg) => assert!(msg.contains("x1*x2 - x3")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_presentation("vars x y\nrel x*y - z*x").unwrap_err() {
            Error::Parse { line, msg, .. } => {
                assert_eq!(line, 2);
                assert!(msg.contains('z'));
            }
            other => panic!("{other:?}"),
        }
        match parse_presentation("vars x y\nrel x*y $ y*x").unwrap_err() {
            Error::Parse { line, col, .. } => assert_eq!((line, col), (2, 9)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn order_comparisons() {
        let p = parse_presentation(S_TEXT).unwrap();
        let o = &p.order;
        assert_eq!(compare_words(o, &[2], &[3]), Ordering::Less);
        assert_eq!(compare_words(o, &[0, 1], &[0, 1]), Ordering::Equal);
        assert_eq!(compare_words(o, &[3, 2], &[2, 3, 2]), Ordering::Less);
    }

    #[test]
    fn scalar_literals() {
        let v = parse_scalar_expr("-3/2*zeta8^3").unwrap();
        assert_eq!(v, &FieldValue::rational(-3, 2) * &FieldValue::zeta_pow(3));
        assert_eq!(parse_scalar_expr("i*i").unwrap(), FieldValue::from_int(-1));
        assert_eq!(
            parse_scalar_expr("1 + zeta8").unwrap(),
            &FieldValue::one() + &FieldValue::zeta_pow(1)
        );
    }

    #[test]
    fn roundtrip_print_parse() {
        let p = parse_presentation(S_TEXT).unwrap();
        let q = parse_presentation(&p.to_text()).unwrap();
        assert_eq!(p, q);
        let z = parse_presentation(
            "field QQ(zeta8)\nvars a b\ndeg a=2 b=2\nrel (1+zeta8)*a*b - 3/2*i*b*a\nrel zeta8^3*a^2 - b^2",
        )
        .unwrap();
        assert_eq!(parse_presentation(&z.to_text()).unwrap(), z);
    }

    #[test]
    fn span_equal_cases() {
        let s = parse_presentation(S_TEXT).unwrap();
        let neg = s
            .with_relations(s.relations.iter().map(|r| r.scale(&FieldValue::from_int(-1))).collect())
            .unwrap();
        assert!(relation_span_equal(&s, &neg));
        assert!(relation_span_equal(&s, &s));
        let t = s
            .with_relations(vec![
                s.parse_poly("x1*x2 - x3^2").unwrap(),
                s.parse_poly("x4^2 + x2*x1").unwrap(),
                s.parse_poly("x1*x3 - x2*x4").unwrap(),
                s.parse_poly("x4*x1 - x3*x2").unwrap(),
                s.parse_poly("x2*x3 - x3*x1").unwrap(),
                s.parse_poly("x4*x2 + x1*x4").unwrap(),
            ])
            .unwrap();
        assert!(!relation_span_equal(&s, &t));
    }

    #[test]
    fn substitution_identity_and_free() {
        let s = parse_presentation(S_TEXT).unwrap();
        let id = Matrix::identity(4);
        assert_eq!(apply_linear_substitution(&s, &id).unwrap(), s);
        let f = Presentation::free(&["x", "y"]);
        let a = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
        assert!(apply_linear_substitution(&f, &a).unwrap().relations.is_empty());
        let sing = Matrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(apply_linear_substitution(&f, &sing), Err(Error::SingularMatrix));
    }

    proptest! {
        #[test]
        fn substitution_then_inverse_restores_span(entries in proptest::collection::vec(-2i64..=2, 16)) {
            let s = parse_presentation(S_TEXT).unwrap();
            let a = Matrix::from_rows(entries.chunks(4).map(|r| r.iter().map(|&x| FieldValue::from_int(x)).collect()).collect()).unwrap();
            if let Ok(ai) = a.inverse() {
                let t = apply_linear_substitution(&s, &a).unwrap();
                let back = apply_linear_substitution(&t, &ai).unwrap();
                prop_assert!(relation_span_equal(&s, &back));
            }
        }

        #[test]
        fn order_is_total_and_sort_stable(ws in proptest::collection::vec(proptest::collection::vec(0u8..4, 0..5), 1..12)) {
            let o = MonomialOrder::deglex(vec![2, 1, 0, 3], vec![1; 4]).unwrap();
            let mut a: Vec<Word> = ws.iter().map(|w| word(w)).collect();
            a.sort_by(|x, y| o.compare(x, y));
            let mut b = a.clone();
            b.sort_by(|x, y| o.compare(x, y));
            prop_assert_eq!(&a, &b);
            for x in &a {
                for y in &a {
                    prop_assert_eq!(o.compare(x, y) == Ordering::Equal, x == y);
                    prop_assert_eq!(o.compare(x, y), o.compare(y, x).reverse());
                }
            }
        }
    }
}
