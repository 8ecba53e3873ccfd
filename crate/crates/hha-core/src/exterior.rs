//! Sparse complex exterior algebra over a fixed `4n`-dimensional real space.
//!
//! Generators are indexed `0..4n`: index `a < 2n` is `zeta^{a+1}` and index
//! `2n + a` is its conjugate `zetabar^{a+1}`, where `zeta^j = e^{2j-1} + i e^{2j}`.
//! A monomial is a bit mask of generators in increasing order, so at most 64
//! real dimensions are supported. No `1/k!` factors are used:
//! `(zeta^{i1} ^ ... ^ zeta^{ik})(Z_{i1}, ..., Z_{ik}) = 1` for the dual frame.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{HhaError, Result};
use crate::linalg::{self, Mat};
use crate::scalar::{ComplexScalar, Scalar};

/// Largest supported real dimension (one bit per complex generator).
pub const MAX_REAL_DIM: usize = 64;

/// Bit mask of a monomial.
pub type Mask = u64;

/// Sign `(-1)^k` of reordering `g_A ^ g_B` into increasing order.
fn merge_sign(a: Mask, b: Mask) -> bool {
    let mut flips = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        let above = if j >= 63 { 0 } else { a >> (j + 1) };
        flips += above.count_ones();
    }
    flips % 2 == 1
}

/// An element of the complexified exterior algebra, possibly inhomogeneous.
#[derive(Clone, PartialEq)]
pub struct Form {
    n: usize,
    terms: BTreeMap<Mask, ComplexScalar>,
}

impl Form {
    /// The zero form over quaternionic dimension `n`.
    pub fn zero(n: usize) -> Form {
        assert!(4 * n <= MAX_REAL_DIM, "real dimension {} exceeds {MAX_REAL_DIM}", 4 * n);
        Form { n, terms: BTreeMap::new() }
    }

    /// The constant form `c`.
    pub fn constant(n: usize, c: ComplexScalar) -> Form {
        Form::monomial(n, 0, c)
    }

    pub fn one(n: usize) -> Form {
        Form::constant(n, ComplexScalar::one())
    }

    pub fn monomial(n: usize, mask: Mask, c: ComplexScalar) -> Form {
        let mut f = Form::zero(n);
        if !c.is_zero() {
            f.terms.insert(mask, c);
        }
        f
    }

    /// The generator with 0-based index `a` in `0..4n`.
    pub fn generator(n: usize, a: usize) -> Form {
        assert!(a < 4 * n);
        Form::monomial(n, 1 << a, ComplexScalar::one())
    }

    /// `zeta^j` for 1-based `j` in `1..=2n`.
    pub fn zeta(n: usize, j: usize) -> Form {
        assert!(j >= 1 && j <= 2 * n);
        Form::generator(n, j - 1)
    }

    /// `zetabar^j` for 1-based `j` in `1..=2n`.
    pub fn zeta_bar(n: usize, j: usize) -> Form {
        assert!(j >= 1 && j <= 2 * n);
        Form::generator(n, 2 * n + j - 1)
    }

    /// Wedge product of `zeta^j` over the given 1-based indices, in the given order.
    pub fn zetas(n: usize, idx: &[usize]) -> Form {
        idx.iter().fold(Form::one(n), |acc, &j| acc.wedge(&Form::zeta(n, j)).expect("degree fits"))
    }

    /// The real coframe element `e^k` for 1-based `k` in `1..=4n`.
    pub fn real_coframe(n: usize, k: usize) -> Form {
        assert!(k >= 1 && k <= 4 * n);
        let j = k.div_ceil(2);
        let half = Scalar::frac(1, 2);
        if k % 2 == 1 {
            // e^{2j-1} = (zeta^j + zetabar^j)/2
            Form::zeta(n, j).add(&Form::zeta_bar(n, j)).scale_real(&half)
        } else {
            // e^{2j} = -i/2 (zeta^j - zetabar^j)
            let c = ComplexScalar::new(Scalar::zero(), -&half);
            Form::zeta(n, j).sub(&Form::zeta_bar(n, j)).scale(&c)
        }
    }

    /// The top-degree form `zeta^1 ^ ... ^ zeta^{2n}`.
    pub fn holomorphic_volume(n: usize) -> Form {
        Form::monomial(n, (1u64 << (2 * n)) - 1, ComplexScalar::one())
    }

    /// `zeta^1 ^ ... ^ zeta^{2n} ^ zetabar^1 ^ ... ^ zetabar^{2n}`.
    pub fn full_volume(n: usize) -> Form {
        let top = if 4 * n == 64 { u64::MAX } else { (1u64 << (4 * n)) - 1 };
        Form::monomial(n, top, ComplexScalar::one())
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Mask, ComplexScalar)>) -> Form {
        let mut f = Form::zero(n);
        for (m, c) in terms {
            f.add_term(m, &c);
        }
        f
    }

    /// Quaternionic dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of complex generators, equal to the real dimension `4n`.
    pub fn generators(&self) -> usize {
        4 * self.n
    }

    pub fn terms(&self) -> &BTreeMap<Mask, ComplexScalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: Mask) -> ComplexScalar {
        self.terms.get(&mask).cloned().unwrap_or_else(ComplexScalar::zero)
    }

    /// Adds `c * g_mask` in place, dropping exact zeros.
    pub fn add_term(&mut self, mask: Mask, c: &ComplexScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c.clone());
            }
        }
    }

    /// Degree if homogeneous; `None` for the zero form or mixed degrees.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    fn max_degree(&self) -> usize {
        self.terms.keys().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    fn holo_mask(&self) -> Mask {
        (1u64 << (2 * self.n)) - 1
    }

    /// Bidegree `(p, q)` of a monomial.
    pub fn bidegree_of(&self, mask: Mask) -> (usize, usize) {
        let h = self.holo_mask();
        ((mask & h).count_ones() as usize, (mask >> (2 * self.n)).count_ones() as usize)
    }

    /// The set of bidegrees with nonzero components.
    pub fn bidegrees(&self) -> BTreeSet<(usize, usize)> {
        self.terms.keys().map(|&m| self.bidegree_of(m)).collect()
    }

    /// Bidegree if pure.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let b = self.bidegrees();
        (b.len() == 1).then(|| *b.iter().next().expect("one element"))
    }

    /// The `(p, q)` component.
    pub fn component(&self, p: usize, q: usize) -> Form {
        Form { n: self.n, terms: self.terms.iter().filter(|(&m, _)| self.bidegree_of(m) == (p, q)).map(|(&m, c)| (m, c.clone())).collect() }
    }

    /// Decomposition into bidegree components.
    pub fn decompose(&self) -> BTreeMap<(usize, usize), Form> {
        let mut out: BTreeMap<(usize, usize), Form> = BTreeMap::new();
        for (&m, c) in &self.terms {
            out.entry(self.bidegree_of(m)).or_insert_with(|| Form::zero(self.n)).terms.insert(m, c.clone());
        }
        out
    }

    pub fn add(&self, o: &Form) -> Form {
        assert_eq!(self.n, o.n, "forms over different dimensions");
        let mut r = self.clone();
        for (&m, c) in &o.terms {
            r.add_term(m, c);
        }
        r
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Form {
        Form { n: self.n, terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect() }
    }

    pub fn scale(&self, c: &ComplexScalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.n);
        }
        Form { n: self.n, terms: self.terms.iter().map(|(&m, v)| (m, v * c)).collect() }
    }

    pub fn scale_real(&self, s: &Scalar) -> Form {
        self.scale(&ComplexScalar::real(s.clone()))
    }

    /// Wedge product; errors if the degrees cannot fit below the top degree.
    pub fn wedge(&self, o: &Form) -> Result<Form> {
        assert_eq!(self.n, o.n, "forms over different dimensions");
        let top = 4 * self.n;
        if !self.is_zero() && !o.is_zero() && self.max_degree() + o.max_degree() > top {
            return Err(HhaError::DegreeOverflow { left: self.max_degree(), right: o.max_degree(), top });
        }
        let mut r = Form::zero(self.n);
        for (&a, ca) in &self.terms {
            for (&b, cb) in &o.terms {
                if a & b != 0 {
                    continue;
                }
                let c = ca * cb;
                let c = if merge_sign(a, b) { -c } else { c };
                r.add_term(a | b, &c);
            }
        }
        Ok(r)
    }

    /// `k`-th wedge power (`self^0 = 1`).
    pub fn power(&self, k: usize) -> Result<Form> {
        let mut acc = Form::one(self.n);
        for _ in 0..k {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Form {
        let n2 = 2 * self.n;
        let h = self.holo_mask();
        let mut r = Form::zero(self.n);
        for (&m, c) in &self.terms {
            let hol = m & h;
            let anti = m >> n2;
            let nm = anti | (hol << n2);
            // Conjugate reads (zetabar of hol) then (zeta of anti); move the q zetas in front.
            let p = hol.count_ones();
            let q = anti.count_ones();
            let c = c.conj();
            let c = if (p * q) % 2 == 1 { -c } else { c };
            r.terms.insert(nm, c);
        }
        r
    }

    /// Interior product with the frame vector dual to generator `a`.
    pub fn contract_generator(&self, a: usize) -> Form {
        let bit = 1u64 << a;
        let mut r = Form::zero(self.n);
        for (&m, c) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let below = (m & (bit - 1)).count_ones();
            let c = if below % 2 == 1 { -c } else { c.clone() };
            r.add_term(m & !bit, &c);
        }
        r
    }

    /// Interior product `iota_X` for a complex vector given in the dual frame
    /// (`x[a]` is the component along the vector dual to generator `a`).
    pub fn contract(&self, x: &[ComplexScalar]) -> Form {
        assert_eq!(x.len(), 4 * self.n);
        let mut r = Form::zero(self.n);
        for (a, xa) in x.iter().enumerate() {
            if !xa.is_zero() {
                r = r.add(&self.contract_generator(a).scale(xa));
            }
        }
        r
    }

    /// Evaluates a form on frame vectors (dual-frame indices, in the given order).
    pub fn eval_frame(&self, idx: &[usize]) -> ComplexScalar {
        let mut f = self.clone();
        for &a in idx {
            f = f.contract_generator(a);
        }
        f.coeff(0)
    }

    /// Matrix `G[a][b] = gamma(V_a, V_b)` of a 2-form in the dual frame.
    pub fn two_form_matrix(&self) -> Mat<ComplexScalar> {
        let g = 4 * self.n;
        let mut m = linalg::zeros(g, g);
        for (&mask, c) in &self.terms {
            if mask.count_ones() != 2 {
                continue;
            }
            let a = mask.trailing_zeros() as usize;
            let b = 63 - mask.leading_zeros() as usize;
            m[a][b] = c.clone();
            m[b][a] = -c;
        }
        m
    }

    /// 2-form with coefficients `G[a][b]` for `a < b` (the skew part of `G`).
    pub fn from_bilinear(n: usize, g: &Mat<ComplexScalar>) -> Form {
        let half = ComplexScalar::frac(1, 2);
        let mut f = Form::zero(n);
        for a in 0..4 * n {
            for b in a + 1..4 * n {
                let c = &(&g[a][b] - &g[b][a]) * &half;
                f.add_term((1u64 << a) | (1u64 << b), &c);
            }
        }
        f
    }

    /// Converts every coefficient to the float backend.
    pub fn to_float(&self) -> Form {
        Form { n: self.n, terms: self.terms.iter().map(|(&m, c)| (m, c.to_float())).collect() }
    }

    /// Ratio `self / other` when `self` is an exact scalar multiple of `other`.
    pub fn ratio_to(&self, other: &Form) -> Option<ComplexScalar> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(ComplexScalar::zero());
        }
        let (&m, c) = other.terms.iter().next().expect("nonzero");
        let lambda = &self.coeff(m) / c;
        (self.sub(&other.scale(&lambda))).is_zero().then_some(lambda)
    }

    /// Human-readable label of a generator.
    pub fn generator_name(n: usize, a: usize) -> String {
        if a < 2 * n {
            format!("z{}", a + 1)
        } else {
            format!("zb{}", a - 2 * n + 1)
        }
    }
}

/// Recursive-descent parser for form expressions such as `1/2*z1^z3 + zb1^z3 - i*e5^e6`.
///
/// Atoms are numbers, `i`, `sqrt(D)`, generators `z<j>` and `zb<j>` (1-based), real coframe
/// elements `e<k>` (1-based) and parenthesized expressions. `*` and `^` both denote the wedge
/// product, which reduces to scalar multiplication on constants; `/` divides by a nonzero constant.
struct FormParser<'a> {
    n: usize,
    src: &'a str,
    pos: usize,
}

impl FormParser<'_> {
    fn err(&self, msg: &str) -> HhaError {
        HhaError::Parse(format!("{msg} at offset {} in '{}'", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn expr(&mut self) -> Result<Form> {
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Form> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') | Some('^') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.wedge(&rhs)?;
                }
                Some('/') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    let c = match rhs.terms.iter().next() {
                        Some((&0, c)) if rhs.terms.len() == 1 => c.clone(),
                        _ => return Err(self.err("division by a non-constant or zero")),
                    };
                    acc = acc.scale(&c.inv().ok_or_else(|| self.err("division by zero"))?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn index(&mut self, what: &str, max: usize) -> Result<usize> {
        let digits = self.take_while(|c| c.is_ascii_digit()).to_string();
        let k: usize = digits.parse().map_err(|_| self.err(&format!("missing index after '{what}'")))?;
        if k == 0 || k > max {
            return Err(self.err(&format!("index {what}{k} out of range 1..={max}")));
        }
        Ok(k)
    }

    fn factor(&mut self) -> Result<Form> {
        let n = self.n;
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let lit = self.take_while(|c| c.is_ascii_digit() || c == '.').to_string();
                let v: Scalar = lit.parse().map_err(|_| self.err("bad number"))?;
                Ok(Form::constant(n, ComplexScalar::real(v)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let word = self.take_while(|c| c.is_ascii_alphabetic()).to_string();
                match word.as_str() {
                    "i" => Ok(Form::constant(n, ComplexScalar::i())),
                    "sqrt" => {
                        if self.peek() != Some('(') {
                            return Err(self.err("expected '(' after sqrt"));
                        }
                        self.pos += 1;
                        self.skip_ws();
                        let d = self.take_while(|c| c.is_ascii_digit()).to_string();
                        let v: Scalar = format!("sqrt({d})").parse().map_err(|_| self.err("bad radicand"))?;
                        if self.peek() != Some(')') {
                            return Err(self.err("expected ')'"));
                        }
                        self.pos += 1;
                        Ok(Form::constant(n, ComplexScalar::real(v)))
                    }
                    "z" => Ok(Form::zeta(n, self.index("z", 2 * n)?)),
                    "zb" => Ok(Form::zeta_bar(n, self.index("zb", 2 * n)?)),
                    "e" => Ok(Form::real_coframe(n, self.index("e", 4 * n)?)),
                    _ => Err(self.err(&format!("unknown symbol '{word}'"))),
                }
            }
            Some(c) => Err(self.err(&format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl Form {
    /// Parses a form expression over quaternionic dimension `n`; the inverse of `Display`.
    pub fn parse(n: usize, s: &str) -> Result<Form> {
        let mut p = FormParser { n, src: s, pos: 0 };
        let f = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(f)
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&m, c) in &self.terms {
            let names: Vec<String> = (0..4 * self.n).filter(|a| m >> a & 1 == 1).map(|a| Form::generator_name(self.n, a)).collect();
            let coeff = c.to_string();
            // A leading minus on a plain coefficient becomes the separator.
            let (negative, body) = match coeff.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, coeff),
            };
            let body = if body.contains(['+', '-']) || (body.contains('*') && names.is_empty()) { format!("({body})") } else { body };
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            if names.is_empty() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{}", names.join("^"))?;
            } else {
                write!(f, "{body}*{}", names.join("^"))?;
            }
        }
        Ok(())
    }
}

/// Linear action of an endomorphism on generators, `L g_c = sum_a M[c][a] g_a`,
/// extended multiplicatively to forms.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    n: usize,
    matrix: Mat<ComplexScalar>,
    rows: Vec<Vec<(usize, ComplexScalar)>>,
}

impl GeneratorMap {
    pub fn new(n: usize, matrix: Mat<ComplexScalar>) -> GeneratorMap {
        let rows =
            matrix.iter().map(|r| r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(a, c)| (a, c.clone())).collect()).collect();
        GeneratorMap { n, matrix, rows }
    }

    pub fn matrix(&self) -> &Mat<ComplexScalar> {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Image of generator `c` as a 1-form.
    pub fn image(&self, c: usize) -> Form {
        Form::from_terms(self.n, self.rows[c].iter().map(|(a, v)| (1u64 << a, v.clone())))
    }

    /// Pullback action on an arbitrary form.
    pub fn apply(&self, f: &Form) -> Form {
        let mut out = Form::zero(self.n);
        for (&m, c) in f.terms() {
            let mut partial: BTreeMap<Mask, ComplexScalar> = BTreeMap::new();
            partial.insert(0, c.clone());
            let mut rest = m;
            while rest != 0 {
                let g = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let mut next: BTreeMap<Mask, ComplexScalar> = BTreeMap::new();
                for (&pm, pc) in &partial {
                    for (b, v) in &self.rows[g] {
                        let bit = 1u64 << b;
                        if pm & bit != 0 {
                            continue;
                        }
                        let above = (pm >> b) >> 1;
                        let mut t = pc * v;
                        if above.count_ones() % 2 == 1 {
                            t = -t;
                        }
                        let e = next.entry(pm | bit).or_insert_with(ComplexScalar::zero);
                        *e = &*e + &t;
                    }
                }
                next.retain(|_, v| !v.is_zero());
                partial = next;
            }
            for (pm, pc) in partial {
                out.add_term(pm, &pc);
            }
        }
        out
    }

    pub fn compose(&self, other: &GeneratorMap) -> GeneratorMap {
        // (self o other) g = self(other g): rows combine as other * self.
        GeneratorMap::new(self.n, linalg::matmul(&other.matrix, &self.matrix))
    }

    pub fn inverse(&self) -> Option<GeneratorMap> {
        linalg::inverse(&self.matrix).map(|m| GeneratorMap::new(self.n, m))
    }
}

/// Mask of `zeta^1 .. zeta^{2n}`.
pub fn holomorphic_mask(n: usize) -> Mask {
    (1u64 << (2 * n)) - 1
}

/// Mask of `zetabar^1 .. zetabar^{2n}`.
pub fn antiholomorphic_mask(n: usize) -> Mask {
    holomorphic_mask(n) << (2 * n)
}

fn subsets(bits: usize, k: usize, offset: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    if k > bits {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(0u64, |m, &i| m | (1u64 << (i + offset))));
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < bits - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Monomial masks of bidegree `(p, q)`, in increasing order of their holomorphic part.
pub fn bidegree_basis(n: usize, p: usize, q: usize) -> Vec<Mask> {
    let hol = subsets(2 * n, p, 0);
    let anti = subsets(2 * n, q, 2 * n);
    let mut out = Vec::with_capacity(hol.len() * anti.len());
    for h in &hol {
        for a in &anti {
            out.push(h | a);
        }
    }
    out
}

/// Coefficients of the complex generators in the real coframe:
/// `g_a = sum_m C[a][m] e^m`.
pub fn coframe_matrix(n: usize) -> Mat<ComplexScalar> {
    let g = 4 * n;
    let mut c = linalg::zeros(g, g);
    for j in 0..2 * n {
        c[j][2 * j] = ComplexScalar::one();
        c[j][2 * j + 1] = ComplexScalar::i();
        c[2 * n + j][2 * j] = ComplexScalar::one();
        c[2 * n + j][2 * j + 1] = -ComplexScalar::i();
    }
    c
}

/// Inverse of [`coframe_matrix`]: `e^m = sum_a Cinv[m][a] g_a`. Its columns are
/// the real components of the dual frame vectors.
pub fn coframe_inverse(n: usize) -> Mat<ComplexScalar> {
    let g = 4 * n;
    let half = ComplexScalar::frac(1, 2);
    let mut c = linalg::zeros(g, g);
    for j in 0..2 * n {
        c[2 * j][j] = half.clone();
        c[2 * j][2 * n + j] = half.clone();
        c[2 * j + 1][j] = -half.mul_i();
        c[2 * j + 1][2 * n + j] = half.mul_i();
    }
    c
}

/// Generator-level matrix `M = C L C^{-1}` of a real endomorphism given by its
/// vector-action matrix `L` (`(LX)^k = sum_m L[k][m] X^m`); the pullback on the
/// coframe is `L e^k = sum_m L[k][m] e^m`.
pub fn endomorphism_map(n: usize, l: &Mat<Scalar>) -> GeneratorMap {
    let c = coframe_matrix(n);
    let ci = coframe_inverse(n);
    let lc = linalg::complexify(l);
    GeneratorMap::new(n, linalg::matmul(&linalg::matmul(&c, &lc), &ci))
}

/// Pullback action `(L eta)(X1, ..., Xk) = eta(L X1, ..., L Xk)` of a real endomorphism.
pub fn endo_action(l: &Mat<Scalar>, a: &Form) -> Form {
    endomorphism_map(a.n(), l).apply(a)
}

/// Complex components, in the dual frame, of a real vector `X = sum X^m e_m`.
pub fn real_vector_to_frame(n: usize, x: &[Scalar]) -> Vec<ComplexScalar> {
    let c = coframe_matrix(n);
    let xc: Vec<ComplexScalar> = x.iter().cloned().map(ComplexScalar::real).collect();
    linalg::mat_vec(&c, &xc)
}

/// Strictly upper-triangular storage of a (2,0)-form `Omega = sum_{i<j} A_ij zeta^i ^ zeta^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix {
    size: usize,
    entries: Mat<ComplexScalar>,
}

impl SkewMatrix {
    /// Zero matrix of even size `2n`.
    pub fn zero(size: usize) -> SkewMatrix {
        SkewMatrix { size, entries: linalg::zeros(size, size) }
    }

    /// The standard form `sum_i zeta^{2i-1} ^ zeta^{2i}` of size `2n`.
    pub fn standard(n: usize) -> SkewMatrix {
        let mut s = SkewMatrix::zero(2 * n);
        for i in 0..n {
            s.set(2 * i + 1, 2 * i + 2, ComplexScalar::one());
        }
        s
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `A_ij` for 1-based `i < j`.
    pub fn get(&self, i: usize, j: usize) -> ComplexScalar {
        assert!(i < j && j <= self.size);
        self.entries[i - 1][j - 1].clone()
    }

    /// Sets `A_ij` for 1-based `i < j`.
    pub fn set(&mut self, i: usize, j: usize, v: ComplexScalar) {
        assert!(i < j && j <= self.size);
        self.entries[i - 1][j - 1] = v;
    }

    /// Full skew-symmetric matrix with `S_ij = A_ij`, `S_ji = -A_ij`.
    pub fn full(&self) -> Mat<ComplexScalar> {
        let mut m = linalg::zeros(self.size, self.size);
        for i in 0..self.size {
            for j in i + 1..self.size {
                m[i][j] = self.entries[i][j].clone();
                m[j][i] = -&self.entries[i][j];
            }
        }
        m
    }

    pub fn from_full(m: &Mat<ComplexScalar>) -> SkewMatrix {
        let size = m.len();
        let mut s = SkewMatrix::zero(size);
        for i in 0..size {
            for j in i + 1..size {
                s.entries[i][j] = m[i][j].clone();
            }
        }
        s
    }

    /// The (2,0)-form `sum_{i<j} A_ij zeta^i ^ zeta^j` over quaternionic dimension `size/2`.
    pub fn to_form(&self) -> Form {
        let n = self.size / 2;
        let mut f = Form::zero(n);
        for i in 0..self.size {
            for j in i + 1..self.size {
                f.add_term((1u64 << i) | (1u64 << j), &self.entries[i][j]);
            }
        }
        f
    }

    /// Reads back a form of pure bidegree (2,0).
    pub fn from_form(f: &Form) -> Result<SkewMatrix> {
        if !f.is_zero() && f.bidegree() != Some((2, 0)) {
            return Err(HhaError::Bidegree { expected: "(2,0)".into(), got: format!("{:?}", f.bidegrees()) });
        }
        let size = 2 * f.n();
        let mut s = SkewMatrix::zero(size);
        for (&m, c) in f.terms() {
            let a = m.trailing_zeros() as usize;
            let b = 63 - m.leading_zeros() as usize;
            s.entries[a][b] = c.clone();
        }
        Ok(s)
    }

    /// Pfaffian normalized so that the standard form has Pfaffian 1; then
    /// `Omega^n / n! = pf * zeta^1 ^ ... ^ zeta^{2n}`.
    pub fn pfaffian(&self) -> Result<ComplexScalar> {
        linalg::pfaffian(&self.full())
    }
}

/// `n!` as a scalar.
pub fn factorial(n: usize) -> Scalar {
    (1..=n as i64).fold(Scalar::one(), |acc, k| &acc * &Scalar::from_int(k))
}
