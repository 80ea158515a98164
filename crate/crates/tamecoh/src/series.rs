//! Rational Poincaré-series arithmetic in at most two formal variables.
//!
//! A series is a quotient of integer-coefficient polynomials, with Laurent
//! exponents permitted (they are cleared by monomial normalisation before
//! any expansion).  Equality is decided by cross-multiplication, never by
//! truncation.  The Koszul duality substitution p ↦ 1/p(−st⁻¹, t⁻¹) acts on
//! the first variable as the homological one.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("series parse error at byte {0}: {1}")]
    Parse(usize, String),
    #[error("series uses more than two variables: {0:?}")]
    TooManyVars(Vec<String>),
    #[error("series is not expandable: {0}")]
    NotExpandable(String),
    #[error("variable conventions differ: {0:?} vs {1:?}")]
    VarMismatch(Vec<String>, Vec<String>),
    #[error("division by the zero series")]
    DivideByZero,
}

/// A polynomial in two variables with integer coefficients and (possibly
/// negative) integer exponents, keyed by (exponent of var 0, exponent of var 1).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly2 {
    pub terms: BTreeMap<(i32, i32), i64>,
}

impl Poly2 {
    pub fn zero() -> Poly2 {
        Poly2::default()
    }

    pub fn constant(c: i64) -> Poly2 {
        let mut p = Poly2::zero();
        if c != 0 {
            p.terms.insert((0, 0), c);
        }
        p
    }

    pub fn monomial(a: i32, b: i32, c: i64) -> Poly2 {
        let mut p = Poly2::zero();
        if c != 0 {
            p.terms.insert((a, b), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&k, &v) in &other.terms {
            let e = out.terms.entry(k).or_insert(0);
            *e += v;
            if *e == 0 {
                out.terms.remove(&k);
            }
        }
        out
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|(&k, &v)| (k, -v)).collect() }
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a1, b1), &c1) in &self.terms {
            for (&(a2, b2), &c2) in &other.terms {
                let k = (a1 + a2, b1 + b2);
                let e = out.terms.entry(k).or_insert(0);
                *e += c1.checked_mul(c2).expect("coefficient overflow");
                if *e == 0 {
                    out.terms.remove(&k);
                }
            }
        }
        out
    }

    /// Substitute var0 → −var0·var1⁻¹ and var1 → var1⁻¹
    /// (the Koszul duality substitution).
    fn koszul_substitute(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a, b), &c) in &self.terms {
            let sign = if a % 2 == 0 { 1 } else { -1 };
            let k = (a, -a - b);
            let e = out.terms.entry(k).or_insert(0);
            *e += sign * c;
            if *e == 0 {
                out.terms.remove(&k);
            }
        }
        out
    }

    /// Substitute var0 → −var0 (single-variable Koszul duality).
    fn negate_var0(&self) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), &c)| ((a, b), if a % 2 == 0 { c } else { -c }))
                .collect(),
        }
    }

    fn min_exponents(&self) -> (i32, i32) {
        let mut ma = i32::MAX;
        let mut mb = i32::MAX;
        for &(a, b) in self.terms.keys() {
            ma = ma.min(a);
            mb = mb.min(b);
        }
        (ma.min(0), mb.min(0))
    }
}

/// A rational function num/den with integer coefficients.
#[derive(Clone, Debug)]
pub struct RationalSeries {
    /// The variable names actually used (≤ 2); index 0 is the homological
    /// variable for Koszul duality purposes.
    pub vars: Vec<String>,
    pub num: Poly2,
    pub den: Poly2,
}

impl RationalSeries {
    pub fn from_poly(vars: Vec<String>, num: Poly2) -> RationalSeries {
        RationalSeries { vars, num, den: Poly2::constant(1) }
    }

    pub fn zero() -> RationalSeries {
        RationalSeries { vars: vec![], num: Poly2::zero(), den: Poly2::constant(1) }
    }

    fn check_vars(&self, other: &RationalSeries) -> Result<Vec<String>, SeriesError> {
        // Merge variable lists; order of first appearance wins.
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        if vars.len() > 2 {
            return Err(SeriesError::TooManyVars(vars));
        }
        Ok(vars)
    }

    pub fn add(&self, other: &RationalSeries) -> Result<RationalSeries, SeriesError> {
        let vars = self.check_vars(other)?;
        Ok(RationalSeries {
            vars,
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        })
    }

    pub fn sub(&self, other: &RationalSeries) -> Result<RationalSeries, SeriesError> {
        self.add(&RationalSeries {
            vars: other.vars.clone(),
            num: other.num.neg(),
            den: other.den.clone(),
        })
    }

    pub fn mul(&self, other: &RationalSeries) -> Result<RationalSeries, SeriesError> {
        let vars = self.check_vars(other)?;
        Ok(RationalSeries { vars, num: self.num.mul(&other.num), den: self.den.mul(&other.den) })
    }

    pub fn div(&self, other: &RationalSeries) -> Result<RationalSeries, SeriesError> {
        if other.num.is_zero() {
            return Err(SeriesError::DivideByZero);
        }
        let vars = self.check_vars(other)?;
        Ok(RationalSeries { vars, num: self.num.mul(&other.den), den: self.den.mul(&other.num) })
    }

    /// Equality as rational functions, by cross-multiplication.
    pub fn eq_series(&self, other: &RationalSeries) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// The Koszul duality formula p_{R!}(s,t) = 1/p_R(−st⁻¹, t⁻¹); with a
    /// single variable it specialises to 1/p(−s).
    pub fn koszul_dual_series(&self) -> Result<RationalSeries, SeriesError> {
        let (num, den) = if self.vars.len() >= 2 {
            (self.num.koszul_substitute(), self.den.koszul_substitute())
        } else {
            (self.num.negate_var0(), self.den.negate_var0())
        };
        if num.is_zero() {
            return Err(SeriesError::NotExpandable("reciprocal of the zero series".into()));
        }
        // Reciprocal.  The result may be a Laurent-type series (negative
        // internal exponents); it need not be expandable as a power series,
        // so no expandability check here — `expand` stays strict.
        Ok(RationalSeries { vars: self.vars.clone(), num: den, den: num })
    }

    /// Clear Laurent exponents and ensure the denominator has a nonzero
    /// constant term (after pulling out a common monomial).
    fn normalised(&self) -> Result<(Poly2, Poly2, i64), SeriesError> {
        if self.den.is_zero() {
            return Err(SeriesError::NotExpandable("zero denominator".into()));
        }
        let (na, nb) = self.num.min_exponents();
        let (da, db) = self.den.min_exponents();
        let sa = -(na.min(da));
        let sb = -(nb.min(db));
        let shift = Poly2::monomial(sa, sb, 1);
        let mut num = self.num.mul(&shift);
        let mut den = self.den.mul(&shift);
        // Pull a common monomial factor of den out of both, if possible, so
        // that e.g. t·num / t·den still expands.
        let la = den.terms.keys().map(|&(a, _)| a).min().unwrap();
        let lb = den.terms.keys().map(|&(_, b)| b).min().unwrap();
        if (la, lb) != (0, 0) && la >= 0 && lb >= 0 {
            let ok = num.is_zero() || num.terms.keys().all(|&(a, b)| a >= la && b >= lb);
            if ok {
                let unshift = Poly2::monomial(-la, -lb, 1);
                num = num.mul(&unshift);
                den = den.mul(&unshift);
            }
        }
        let c0 = den.terms.get(&(0, 0)).copied().unwrap_or(0);
        if c0 == 0 {
            return Err(SeriesError::NotExpandable(
                "denominator has zero constant term after normalisation".into(),
            ));
        }
        Ok((num, den, c0))
    }

    /// Exact coefficients of the power-series expansion through total degree
    /// `order`; keys are exponent pairs of the declared variables.
    pub fn expand(&self, order: i32) -> Result<BTreeMap<(i32, i32), i64>, SeriesError> {
        let (num, den, c0) = self.normalised()?;
        let mut coeffs: BTreeMap<(i32, i32), i64> = BTreeMap::new();
        for total in 0..=order {
            for a in 0..=total {
                let b = total - a;
                let mut acc = num.terms.get(&(a, b)).copied().unwrap_or(0);
                for (&(da, db), &dc) in &den.terms {
                    if (da, db) == (0, 0) {
                        continue;
                    }
                    if da <= a && db <= b {
                        if let Some(&c) = coeffs.get(&(a - da, b - db)) {
                            acc -= dc * c;
                        }
                    }
                }
                if acc % c0 != 0 {
                    return Err(SeriesError::NotExpandable(format!(
                        "non-integer coefficient at degree ({a},{b})"
                    )));
                }
                let c = acc / c0;
                if c != 0 {
                    coeffs.insert((a, b), c);
                }
            }
        }
        Ok(coeffs)
    }

    /// Compare the expansion with an externally computed dimension table.
    /// Returns the list of mismatching degrees (empty = agreement).
    pub fn compare_with_dims(
        &self,
        dims: &BTreeMap<(i32, i32), i64>,
        order: i32,
    ) -> Result<Vec<((i32, i32), i64, i64)>, SeriesError> {
        let exp = self.expand(order)?;
        let mut bad = Vec::new();
        let keys: std::collections::BTreeSet<(i32, i32)> =
            exp.keys().chain(dims.keys()).copied().collect();
        for k in keys {
            if k.0 + k.1 > order {
                continue;
            }
            let a = exp.get(&k).copied().unwrap_or(0);
            let b = dims.get(&k).copied().unwrap_or(0);
            if a != b {
                bad.push((k, a, b));
            }
        }
        Ok(bad)
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Poly2, f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if p.is_zero() {
                return write!(f, "0");
            }
            let mut first = true;
            for (&(a, b), &c) in &p.terms {
                if !first {
                    write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
                } else if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
                let mut parts = Vec::new();
                if c.abs() != 1 || (a == 0 && b == 0) {
                    parts.push(c.abs().to_string());
                }
                let names: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
                for (idx, e) in [(0usize, a), (1, b)] {
                    if e != 0 {
                        let n = names.get(idx).copied().unwrap_or(if idx == 0 { "s" } else { "t" });
                        if e == 1 {
                            parts.push(n.to_string());
                        } else {
                            parts.push(format!("{n}^{e}"));
                        }
                    }
                }
                write!(f, "{}", parts.join("*"))?;
            }
            Ok(())
        };
        write!(f, "(")?;
        show(&self.num, f)?;
        write!(f, ")/(")?;
        show(&self.den, f)?;
        write!(f, ")")
    }
}

/// Parse a series literal like `(1+t*u^4)*(1+t*u)/(1-t*u-t*u^3-t^2*u^3)`.
///
/// At most two distinct variables may appear; the first to appear is the
/// homological variable of `koszul_dual_series` unless the conventional pair
/// {s,t} or {t,u} is used, in which case s (resp. t) is homological.
pub fn parse_series(input: &str) -> Result<RationalSeries, SeriesError> {
    let mut p = Parser { src: input.as_bytes(), pos: 0, vars: Vec::new() };
    let r = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(SeriesError::Parse(p.pos, "trailing input".into()));
    }
    let mut r = r;
    // Canonical homological-variable ordering for the conventional pairs.
    let names: Vec<&str> = p.vars.iter().map(|s| s.as_str()).collect();
    let swap = matches!(&names[..], ["t", "s"] | ["u", "t"]);
    if swap {
        r = RationalSeries {
            vars: vec![p.vars[1].clone(), p.vars[0].clone()],
            num: transpose_poly(&r.num),
            den: transpose_poly(&r.den),
        };
    } else {
        r.vars = p.vars.clone();
    }
    Ok(r)
}

fn transpose_poly(p: &Poly2) -> Poly2 {
    Poly2 { terms: p.terms.iter().map(|(&(a, b), &c)| ((b, a), c)).collect() }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Vec<String>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RationalSeries, SeriesError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalSeries, SeriesError> {
        let mut acc = self.factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?)?;
                }
                b'/' => {
                    self.pos += 1;
                    acc = acc.div(&self.factor()?)?;
                }
                b'(' => {
                    // Implicit product: (..)(..)
                    acc = acc.mul(&self.factor()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RationalSeries, SeriesError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.integer()?;
            if e < 0 {
                // Negative powers only for single monomials (Laurent).
                if base.num.terms.len() == 1 && base.den == Poly2::constant(1) {
                    let (&(a, b), &c) = base.num.terms.iter().next().unwrap();
                    if c == 1 {
                        return Ok(RationalSeries {
                            vars: base.vars,
                            num: Poly2::monomial(a * e as i32, b * e as i32, 1),
                            den: Poly2::constant(1),
                        });
                    }
                }
                return Err(SeriesError::Parse(self.pos, "negative power of non-monomial".into()));
            }
            let mut acc = RationalSeries::from_poly(base.vars.clone(), Poly2::constant(1));
            for _ in 0..e {
                acc = acc.mul(&base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalSeries, SeriesError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(SeriesError::Parse(self.pos, "expected ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                let e = self.factor()?;
                Ok(RationalSeries { vars: e.vars, num: e.num.neg(), den: e.den })
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RationalSeries::from_poly(vec![], Poly2::constant(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                let name = (c as char).to_string();
                let idx = match self.vars.iter().position(|v| *v == name) {
                    Some(i) => i,
                    None => {
                        self.vars.push(name.clone());
                        if self.vars.len() > 2 {
                            return Err(SeriesError::TooManyVars(self.vars.clone()));
                        }
                        self.vars.len() - 1
                    }
                };
                let mono = if idx == 0 { Poly2::monomial(1, 0, 1) } else { Poly2::monomial(0, 1, 1) };
                Ok(RationalSeries { vars: self.vars.clone(), num: mono, den: Poly2::constant(1) })
            }
            other => Err(SeriesError::Parse(self.pos, format!("unexpected {:?}", other.map(|b| b as char)))),
        }
    }

    fn integer(&mut self) -> Result<i64, SeriesError> {
        self.skip_ws();
        let neg = if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(SeriesError::Parse(self.pos, "expected integer".into()));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: i64 = s.parse().map_err(|e| SeriesError::Parse(start, format!("{e}")))?;
        Ok(if neg { -v } else { v })
    }
}
