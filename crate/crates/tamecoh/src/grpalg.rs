//! Finite 2-groups of the three tame families and their group algebras.
//!
//! Groups are realised on normal-form words r^i f^ε, where r is the maximal
//! rotation (r = gh of order 2q for dihedral, r = g of order 4q for
//! semidihedral, r = g⁻¹h of order 4q for quaternion) and f is a reflection-
//! type element.  The defining presentation generators g, h are exposed as
//! named elements on top of this normal form, and the presentation relations
//! are checked on construction.  Element arithmetic is convolution over the
//! precomputed multiplication table.
//!
//! The interesting content is the verification of the explicit generators
//! X, Y of the radical and the presentations they satisfy — including the
//! socle terms (XY)^{2q} that the older literature omits.

use std::collections::HashMap;

use thiserror::Error;

use crate::exactlin::{rank, rref, Field, FElt, Matrix, OMEGA, OMEGA_BAR};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Dihedral,
    Semidihedral,
    Quaternion,
    /// Cyclic 2-group; smoke-test only, not part of the tame families.
    Cyclic,
}

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("invalid q={q} for {family:?}: {reason}")]
    BadQ { family: Family, q: usize, reason: String },
    #[error("quaternion q=1 requires GF(4)")]
    RequiresGF4,
    #[error("unbound name `{0}` in relation expression")]
    Unbound(String),
    #[error("expression parse error at byte {0}: {1}")]
    Parse(usize, String),
    #[error("element has nonzero augmentation, not in the radical")]
    NotInRadical,
}

/// A finite group with a normal-form multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub family: Family,
    pub q: usize,
    pub order: usize,
    rot_ord: usize,
    table: Vec<u32>,
    /// Index of the presentation generator g.
    pub g: usize,
    /// Index of the presentation generator h.
    pub h: usize,
}

impl FiniteGroup {
    /// Index of the word r^i f^ε.
    fn idx(&self, i: usize, eps: usize) -> usize {
        (i % self.rot_ord) + self.rot_ord * eps
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order).find(|&b| self.mul(a, b) == 0).expect("group has inverses")
    }

    /// The group element g^n (n may exceed the order; reduced mod ord(g)).
    pub fn g_pow(&self, n: usize) -> usize {
        let mut acc = self.identity();
        for _ in 0..n {
            acc = self.mul(acc, self.g);
        }
        acc
    }
}

/// Build one of the tame families.
///
/// Orders: dihedral 4q (relations g² = h² = (gh)^{2q} = 1), semidihedral 8q
/// (g^{4q} = h² = 1, hgh⁻¹ = g^{2q−1}), quaternion 8q (g² = h² = (g⁻¹h)^{2q},
/// central of order two).
pub fn build_group(family: Family, q: usize) -> Result<FiniteGroup, GroupError> {
    let bad = |reason: &str| GroupError::BadQ { family, q, reason: reason.into() };
    if !q.is_power_of_two() {
        return Err(bad("q must be a power of two"));
    }
    match family {
        Family::Semidihedral if q < 2 => return Err(bad("q must be at least 2")),
        _ => {}
    }
    let (rot_ord, order, twist, f_sq): (usize, usize, i64, usize) = match family {
        Family::Dihedral => (2 * q, 4 * q, -1, 0),
        Family::Semidihedral => (4 * q, 8 * q, 2 * q as i64 - 1, 0),
        Family::Quaternion => (4 * q, 8 * q, -1, 2 * q),
        Family::Cyclic => (q, q, 1, 0),
    };
    let n_eps = order / rot_ord;
    let mut table = vec![0u32; order * order];
    let reduce = |n: i64| -> usize { (n.rem_euclid(rot_ord as i64)) as usize };
    for i in 0..rot_ord {
        for a in 0..n_eps {
            for j in 0..rot_ord {
                for b in 0..n_eps {
                    // (r^i f^a)(r^j f^b): f r^j = r^{twist·j} f, f² = r^{f_sq}.
                    let jj = if a == 1 { reduce(twist * j as i64) } else { j };
                    let extra = if a == 1 && b == 1 { f_sq } else { 0 };
                    let k = (i + jj + extra) % rot_ord;
                    let eps = (a + b) % 2;
                    let lhs = i + rot_ord * a;
                    let rhs = j + rot_ord * b;
                    table[lhs * order + rhs] = (k + rot_ord * eps) as u32;
                }
            }
        }
    }
    let mut grp = FiniteGroup { family, q, order, rot_ord, table, g: 0, h: 0 };
    // Presentation generators on top of the normal form.
    let f_idx = if n_eps == 2 { grp.idx(0, 1) } else { grp.idx(1, 0) };
    let r_idx = grp.idx(1, 0);
    let (g, h) = match family {
        Family::Dihedral => (grp.mul(r_idx, f_idx), f_idx), // g = rf, h = f, gh = r
        Family::Semidihedral => (r_idx, f_idx),
        Family::Quaternion => (f_idx, grp.mul(f_idx, r_idx)), // g = f, h = fr, g⁻¹h = r
        Family::Cyclic => (r_idx, r_idx),
    };
    grp.g = g;
    grp.h = h;
    verify_construction(&grp)?;
    Ok(grp)
}

fn verify_construction(grp: &FiniteGroup) -> Result<(), GroupError> {
    let n = grp.order;
    // Identity and inverses.
    for a in 0..n {
        assert_eq!(grp.mul(0, a), a);
        assert_eq!(grp.mul(a, 0), a);
        grp.inverse(a);
    }
    // Associativity: exhaustive up to order 64, sampled above.
    let check = |a: usize, b: usize, c: usize| {
        assert_eq!(grp.mul(grp.mul(a, b), c), grp.mul(a, grp.mul(b, c)));
    };
    if n <= 64 {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    check(a, b, c);
                }
            }
        }
    } else {
        let mut s: usize = 0x9e3779b9;
        for _ in 0..20_000 {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = (s >> 13) % n;
            let b = (s >> 29) % n;
            let c = (s >> 47) % n;
            check(a, b, c);
        }
    }
    // Defining relations.
    let g = grp.g;
    let h = grp.h;
    let pow = |x: usize, e: usize| {
        let mut acc = 0usize;
        for _ in 0..e {
            acc = grp.mul(acc, x);
        }
        acc
    };
    match grp.family {
        Family::Dihedral => {
            assert_eq!(pow(g, 2), 0);
            assert_eq!(pow(h, 2), 0);
            assert_eq!(pow(grp.mul(g, h), 2 * grp.q), 0);
        }
        Family::Semidihedral => {
            assert_eq!(pow(g, 4 * grp.q), 0);
            assert_eq!(pow(h, 2), 0);
            let lhs = grp.mul(grp.mul(h, g), grp.inverse(h));
            assert_eq!(lhs, pow(g, 2 * grp.q - 1));
        }
        Family::Quaternion => {
            let gi_h = grp.mul(grp.inverse(g), h);
            let z = pow(gi_h, 2 * grp.q);
            assert_eq!(pow(g, 2), z);
            assert_eq!(pow(h, 2), z);
            assert_eq!(pow(z, 2), 0);
        }
        Family::Cyclic => {
            assert_eq!(pow(g, grp.q), 0);
        }
    }
    Ok(())
}

/// An element of the group algebra kG, as a coefficient vector indexed by
/// group elements in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    pub field: Field,
    pub coeffs: Vec<FElt>,
}

impl GroupAlgebraElement {
    pub fn zero(field: Field, grp: &FiniteGroup) -> Self {
        GroupAlgebraElement { field, coeffs: vec![0; grp.order] }
    }

    pub fn one(field: Field, grp: &FiniteGroup) -> Self {
        Self::group_element(field, grp, grp.identity())
    }

    pub fn group_element(field: Field, grp: &FiniteGroup, idx: usize) -> Self {
        let mut e = Self::zero(field, grp);
        e.coeffs[idx] = 1;
        e
    }

    pub fn scalar(field: Field, grp: &FiniteGroup, c: FElt) -> Self {
        let mut e = Self::zero(field, grp);
        e.coeffs[grp.identity()] = c;
        e
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        GroupAlgebraElement {
            field: f,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        GroupAlgebraElement {
            field: f,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, f.neg(b)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self, grp: &FiniteGroup) -> Self {
        let f = self.field;
        let mut out = Self::zero(f, grp);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let k = grp.mul(i, j);
                out.coeffs[k] = f.add(out.coeffs[k], f.mul(a, b));
            }
        }
        out
    }

    pub fn scale(&self, c: FElt) -> Self {
        let f = self.field;
        GroupAlgebraElement { field: f, coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn pow(&self, e: usize, grp: &FiniteGroup) -> Self {
        let mut acc = Self::one(self.field, grp);
        for _ in 0..e {
            acc = acc.mul(self, grp);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The augmentation (sum of coefficients): the algebra map kG → k.
    pub fn augmentation(&self) -> FElt {
        let f = self.field;
        self.coeffs.iter().fold(0, |acc, &c| f.add(acc, c))
    }
}

/// The semidihedral radical generators of the presentation theorem:
/// X = 1 + h and Y = (1+h)·u + g^{2q} + h·g^{4q−1} with
/// u = Σ_{i=0}^{q/2−1} g^{4i+1} + Σ_{i=q/2+1}^{q} g^{4i−1}.
pub fn sd_generators(
    grp: &FiniteGroup,
) -> Result<(GroupAlgebraElement, GroupAlgebraElement), GroupError> {
    assert_eq!(grp.family, Family::Semidihedral);
    let q = grp.q;
    let f = Field::GF2;
    let ge = |n: usize| GroupAlgebraElement::group_element(f, grp, grp.g_pow(n));
    let h = GroupAlgebraElement::group_element(f, grp, grp.h);
    let one = GroupAlgebraElement::one(f, grp);
    let x = one.add(&h);
    let mut u = GroupAlgebraElement::zero(f, grp);
    for i in 0..q / 2 {
        u = u.add(&ge(4 * i + 1));
    }
    for i in q / 2 + 1..=q {
        u = u.add(&ge(4 * i - 1));
    }
    let y = x.mul(&u, grp).add(&ge(2 * q)).add(&h.mul(&ge(4 * q - 1), grp));
    Ok((x, y))
}

/// The quaternion radical generators of the presentation theorem:
/// for q = 1 over GF(4), X = gh + ωg + ω̄h, Y = gh + ω̄g + ωh; for q ≥ 2,
/// u = g + h, v = u^{4q−3} + Σ_{2^i=2}^{q} u^{2q−2^i}, x = (g+1) + v,
/// y = (h+1) + v, X = x + (xy)^{2q−1}, Y = y + (yx)^{2q−1}.
pub fn q_generators(
    grp: &FiniteGroup,
    field: Field,
) -> Result<(GroupAlgebraElement, GroupAlgebraElement), GroupError> {
    assert_eq!(grp.family, Family::Quaternion);
    let q = grp.q;
    let g = GroupAlgebraElement::group_element(field, grp, grp.g);
    let h = GroupAlgebraElement::group_element(field, grp, grp.h);
    if q == 1 {
        if field != Field::GF4 {
            return Err(GroupError::RequiresGF4);
        }
        let gh = g.mul(&h, grp);
        let x = gh.add(&g.scale(OMEGA)).add(&h.scale(OMEGA_BAR));
        let y = gh.add(&g.scale(OMEGA_BAR)).add(&h.scale(OMEGA));
        Ok((x, y))
    } else {
        let one = GroupAlgebraElement::one(field, grp);
        let u = g.add(&h);
        let mut v = u.pow(4 * q - 3, grp);
        let mut p = 2usize;
        while p <= q {
            v = v.add(&u.pow(2 * q - p, grp));
            p *= 2;
        }
        let x = g.add(&one).add(&v);
        let y = h.add(&one).add(&v);
        let xy = x.mul(&y, grp);
        let yx = y.mul(&x, grp);
        let xx = x.add(&xy.pow(2 * q - 1, grp));
        let yy = y.add(&yx.pow(2 * q - 1, grp));
        Ok((xx, yy))
    }
}

/// Outcome of a relation check: the evaluated difference lhs − rhs.
pub struct RelationReport {
    pub holds: bool,
    pub difference: GroupAlgebraElement,
}

/// Evaluate lhs and rhs (noncommutative word/polynomial expressions in named
/// elements) and report whether they agree.
pub fn verify_relation(
    grp: &FiniteGroup,
    env: &HashMap<String, GroupAlgebraElement>,
    lhs: &str,
    rhs: &str,
) -> Result<RelationReport, GroupError> {
    let l = eval_expr(grp, env, lhs)?;
    let r = eval_expr(grp, env, rhs)?;
    let difference = l.sub(&r);
    Ok(RelationReport { holds: difference.is_zero(), difference })
}

/// Evaluate a word/polynomial expression: identifiers bound in `env`,
/// integer constants, `+`, `*`, `^n`, parentheses, juxtaposition-free.
pub fn eval_expr(
    grp: &FiniteGroup,
    env: &HashMap<String, GroupAlgebraElement>,
    src: &str,
) -> Result<GroupAlgebraElement, GroupError> {
    let field = env
        .values()
        .next()
        .map(|e| e.field)
        .unwrap_or(Field::GF2);
    let mut p = ExprParser { src: src.as_bytes(), pos: 0 };
    let v = p.expr(grp, env, field)?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(GroupError::Parse(p.pos, "trailing input".into()));
    }
    Ok(v)
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(
        &mut self,
        grp: &FiniteGroup,
        env: &HashMap<String, GroupAlgebraElement>,
        field: Field,
    ) -> Result<GroupAlgebraElement, GroupError> {
        let mut acc = self.term(grp, env, field)?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term(grp, env, field)?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term(grp, env, field)?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(
        &mut self,
        grp: &FiniteGroup,
        env: &HashMap<String, GroupAlgebraElement>,
        field: Field,
    ) -> Result<GroupAlgebraElement, GroupError> {
        let mut acc = self.factor(grp, env, field)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor(grp, env, field)?, grp);
        }
        Ok(acc)
    }

    fn factor(
        &mut self,
        grp: &FiniteGroup,
        env: &HashMap<String, GroupAlgebraElement>,
        field: Field,
    ) -> Result<GroupAlgebraElement, GroupError> {
        let base = self.atom(grp, env, field)?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(GroupError::Parse(self.pos, "expected exponent".into()));
            }
            let e: usize = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|e| GroupError::Parse(start, format!("{e}")))?;
            return Ok(base.pow(e, grp));
        }
        Ok(base)
    }

    fn atom(
        &mut self,
        grp: &FiniteGroup,
        env: &HashMap<String, GroupAlgebraElement>,
        field: Field,
    ) -> Result<GroupAlgebraElement, GroupError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr(grp, env, field)?;
                if self.peek() != Some(b')') {
                    return Err(GroupError::Parse(self.pos, "expected ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: i64 = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|e| GroupError::Parse(start, format!("{e}")))?;
                Ok(GroupAlgebraElement::scalar(field, grp, field.from_int(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                env.get(name).cloned().ok_or_else(|| GroupError::Unbound(name.to_string()))
            }
            other => Err(GroupError::Parse(
                self.pos,
                format!("unexpected {:?}", other.map(|b| b as char)),
            )),
        }
    }
}

/// Standard environment with g, h, the radical generators X, Y when defined,
/// and (over GF(4)) the scalars w = ω, wb = ω̄.
pub fn standard_env(
    grp: &FiniteGroup,
    field: Field,
) -> Result<HashMap<String, GroupAlgebraElement>, GroupError> {
    let mut env = HashMap::new();
    env.insert("g".into(), GroupAlgebraElement::group_element(field, grp, grp.g));
    env.insert("h".into(), GroupAlgebraElement::group_element(field, grp, grp.h));
    if field == Field::GF4 {
        env.insert("w".into(), GroupAlgebraElement::scalar(field, grp, OMEGA));
        env.insert("wb".into(), GroupAlgebraElement::scalar(field, grp, OMEGA_BAR));
    }
    match grp.family {
        Family::Semidihedral => {
            let (x, y) = sd_generators(grp)?;
            env.insert("X".into(), x);
            env.insert("Y".into(), y);
        }
        Family::Quaternion => {
            let (x, y) = q_generators(grp, field)?;
            env.insert("X".into(), x);
            env.insert("Y".into(), y);
        }
        Family::Dihedral => {
            // X = g + 1, Y = h + 1 generate the radical of kD.
            let one = GroupAlgebraElement::one(field, grp);
            let g = GroupAlgebraElement::group_element(field, grp, grp.g);
            let h = GroupAlgebraElement::group_element(field, grp, grp.h);
            env.insert("X".into(), g.add(&one));
            env.insert("Y".into(), h.add(&one));
        }
        Family::Cyclic => {
            let one = GroupAlgebraElement::one(field, grp);
            let g = GroupAlgebraElement::group_element(field, grp, grp.g);
            env.insert("X".into(), g.add(&one));
        }
    }
    Ok(env)
}

/// Result of a spanning check on a list of words.
pub struct SpanReport {
    pub is_basis: bool,
    pub rank: usize,
}

/// Evaluate the given expressions and check whether they form a k-basis of
/// the group algebra.
pub fn spanning_check(
    grp: &FiniteGroup,
    env: &HashMap<String, GroupAlgebraElement>,
    words: &[&str],
) -> Result<SpanReport, GroupError> {
    let field = env.values().next().map(|e| e.field).unwrap_or(Field::GF2);
    let rows: Result<Vec<Vec<FElt>>, GroupError> =
        words.iter().map(|w| Ok(eval_expr(grp, env, w)?.coeffs)).collect();
    let m = Matrix::from_rows(field, &rows?);
    let r = rank(&m);
    Ok(SpanReport { is_basis: r == grp.order && words.len() == grp.order, rank: r })
}

/// Loewy-series data of the two-sided ideal generated by the given radical
/// elements.
pub struct RadicalReport {
    /// dim J^i / J^{i+1} for i = 0, 1, … (starting with J⁰/J¹, dimension 1
    /// for a local algebra).
    pub layer_dims: Vec<usize>,
    pub socle_dim: usize,
    pub loewy_length: usize,
}

/// Radical filtration of kG from algebra generators of J.  The generators
/// must have augmentation zero.  The socle is computed as the two-sided
/// annihilator of J.
pub fn radical_filtration(
    grp: &FiniteGroup,
    gens: &[GroupAlgebraElement],
) -> Result<RadicalReport, GroupError> {
    let field = gens.first().map(|e| e.field).unwrap_or(Field::GF2);
    for e in gens {
        if e.augmentation() != 0 {
            return Err(GroupError::NotInRadical);
        }
    }
    let n = grp.order;
    // Words of length exactly i in the generators, reduced at each step.
    // Since the gens generate J as an algebra, J^i is spanned by words of
    // length ≥ i, so the chain dims come from suffix-accumulated spans.
    let mut words_by_len: Vec<Vec<GroupAlgebraElement>> = Vec::new();
    let mut cur: Vec<GroupAlgebraElement> = reduce_span(field, gens);
    while !cur.is_empty() && words_by_len.len() <= n {
        words_by_len.push(cur.clone());
        let mut next: Vec<GroupAlgebraElement> = Vec::new();
        for g in gens {
            for b in &cur {
                let p = g.mul(b, grp);
                if !p.is_zero() {
                    next.push(p);
                }
                let p = b.mul(g, grp);
                if !p.is_zero() {
                    next.push(p);
                }
            }
        }
        cur = reduce_span(field, &next);
    }
    // dim J^i for i = 1.. by accumulating from the deep end.
    let mut power_dims = vec![0usize; words_by_len.len() + 1];
    let mut acc: Vec<GroupAlgebraElement> = Vec::new();
    for i in (0..words_by_len.len()).rev() {
        acc.extend(words_by_len[i].iter().cloned());
        acc = reduce_span(field, &acc);
        power_dims[i] = acc.len();
    }
    let mut layer_dims = Vec::new();
    let mut prev_dim = n;
    for &d in &power_dims {
        layer_dims.push(prev_dim - d);
        prev_dim = d;
    }
    let loewy_length = layer_dims.len();
    // Socle: two-sided annihilator of the generators.
    let mut rows: Vec<Vec<FElt>> = Vec::new();
    for gmat in gens {
        // Left multiplication matrix L and right multiplication matrix R, as
        // maps on coefficient vectors; stack L and R.
        let mut l = Matrix::zero(field, n, n);
        let mut r = Matrix::zero(field, n, n);
        for j in 0..n {
            let basis = GroupAlgebraElement::group_element(field, grp, j);
            let lv = gmat.mul(&basis, grp);
            let rv = basis.mul(gmat, grp);
            for (i2, &c) in lv.coeffs.iter().enumerate() {
                if c != 0 {
                    l.set(i2, j, c);
                }
            }
            for (i2, &c) in rv.coeffs.iter().enumerate() {
                if c != 0 {
                    r.set(i2, j, c);
                }
            }
        }
        for i2 in 0..n {
            rows.push(l.row(i2));
        }
        for i2 in 0..n {
            rows.push(r.row(i2));
        }
    }
    let socle_dim = if rows.is_empty() {
        n
    } else {
        n - rank(&Matrix::from_rows(field, &rows))
    };
    Ok(RadicalReport { layer_dims, socle_dim, loewy_length })
}

/// Reduce a spanning set of algebra elements to a linearly independent one.
fn reduce_span(field: Field, v: &[GroupAlgebraElement]) -> Vec<GroupAlgebraElement> {
    if v.is_empty() {
        return Vec::new();
    }
    let rows: Vec<Vec<FElt>> = v.iter().map(|e| e.coeffs.clone()).collect();
    let m = Matrix::from_rows(field, &rows);
    let rr = rref(&m);
    (0..rr.rank)
        .map(|i| GroupAlgebraElement { field, coeffs: rr.reduced.row(i) })
        .collect()
}

/// 1, X, Y, XY, YX, XYX, YXY, … — the first n alternating words, ending
/// with the single longest word (XY)^{n/2… } identified with its mirror.
pub fn alternating_words(n: usize) -> Vec<String> {
    let mut words = vec!["1".to_string()];
    let mut len = 1usize;
    while words.len() < n {
        for start in ["X", "Y"] {
            if words.len() >= n {
                break;
            }
            let mut w = Vec::new();
            for i in 0..len {
                w.push(if (i % 2 == 0) == (start == "X") { "X" } else { "Y" });
            }
            words.push(w.join("*"));
        }
        len += 1;
    }
    words
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(build_group(Family::Dihedral, 2).unwrap().order, 8);
        assert_eq!(build_group(Family::Semidihedral, 2).unwrap().order, 16);
        assert_eq!(build_group(Family::Quaternion, 1).unwrap().order, 8);
        assert!(build_group(Family::Dihedral, 3).is_err());
        assert!(build_group(Family::Semidihedral, 1).is_err());
    }

    #[test]
    fn quaternion_q1_is_quaternion_group() {
        let grp = build_group(Family::Quaternion, 1).unwrap();
        // Exactly one element of order two.
        let mut inv_count = 0;
        for a in 1..grp.order {
            if grp.mul(a, a) == 0 {
                inv_count += 1;
            }
        }
        assert_eq!(inv_count, 1);
    }

    #[test]
    fn sd16_presentation_with_socle_term() {
        let grp = build_group(Family::Semidihedral, 2).unwrap();
        let env = standard_env(&grp, Field::GF2).unwrap();
        assert!(verify_relation(&grp, &env, "X^2", "0").unwrap().holds);
        assert!(verify_relation(&grp, &env, "Y^2", "X*(Y*X)^3 + (Y*X)^4").unwrap().holds);
        // The socle-free variant from the older literature fails, with
        // difference (YX)^{2q} ≠ 0.
        let rep = verify_relation(&grp, &env, "Y^2", "X*(Y*X)^3").unwrap();
        assert!(!rep.holds);
        let socle = eval_expr(&grp, &env, "(Y*X)^4").unwrap();
        assert_eq!(rep.difference, socle);
        assert!(!socle.is_zero());
    }

    #[test]
    fn sd_y_matches_theorem_at_q2() {
        let grp = build_group(Family::Semidihedral, 2).unwrap();
        let env = standard_env(&grp, Field::GF2).unwrap();
        assert!(verify_relation(&grp, &env, "Y", "(1+h)*(g+g^7) + g^4 + h*g^7").unwrap().holds);
        assert!(verify_relation(&grp, &env, "X", "1+h").unwrap().holds);
    }

    #[test]
    fn sd_u_has_four_terms_at_q4() {
        // u = g + g⁵ + g¹¹ + g¹⁵ when q = 4.
        let grp = build_group(Family::Semidihedral, 4).unwrap();
        let env = standard_env(&grp, Field::GF2).unwrap();
        let u = eval_expr(&grp, &env, "g + g^5 + g^11 + g^15").unwrap();
        let y = eval_expr(&grp, &env, "(1+h)").unwrap().mul(&u, &grp);
        let y = y
            .add(&eval_expr(&grp, &env, "g^8").unwrap())
            .add(&eval_expr(&grp, &env, "h*g^15").unwrap());
        assert_eq!(y, env["Y"]);
    }

    #[test]
    fn quaternion_presentations() {
        let grp = build_group(Family::Quaternion, 1).unwrap();
        let env = standard_env(&grp, Field::GF4).unwrap();
        assert!(verify_relation(&grp, &env, "X", "g*h + w*g + wb*h").unwrap().holds);
        assert!(verify_relation(&grp, &env, "X^2", "Y*X*Y").unwrap().holds);
        assert!(verify_relation(&grp, &env, "Y^2", "X*Y*X").unwrap().holds);
        assert!(verify_relation(&grp, &env, "X^4", "0").unwrap().holds);
        assert!(verify_relation(&grp, &env, "Y^4", "0").unwrap().holds);
        assert!(matches!(q_generators(&grp, Field::GF2), Err(GroupError::RequiresGF4)));

        for q in [2usize, 4] {
            let grp = build_group(Family::Quaternion, q).unwrap();
            let env = standard_env(&grp, Field::GF2).unwrap();
            let e = 2 * q - 1;
            assert!(verify_relation(
                &grp,
                &env,
                "X^2",
                &format!("(Y*X)^{e}*Y + (X*Y)^{}", 2 * q)
            )
            .unwrap()
            .holds);
            assert!(verify_relation(
                &grp,
                &env,
                "Y^2",
                &format!("(X*Y)^{e}*X + (Y*X)^{}", 2 * q)
            )
            .unwrap()
            .holds);
            assert!(verify_relation(&grp, &env, "X^4", "0").unwrap().holds);
            assert!(verify_relation(&grp, &env, "Y^4", "0").unwrap().holds);
        }
    }

    #[test]
    fn alternating_words_are_a_basis() {
        for q in [2usize, 4] {
            let grp = build_group(Family::Semidihedral, q).unwrap();
            let env = standard_env(&grp, Field::GF2).unwrap();
            let words = alternating_words(8 * q);
            let refs: Vec<&str> = words.iter().map(|s| s.as_str()).collect();
            let rep = spanning_check(&grp, &env, &refs).unwrap();
            assert!(rep.is_basis, "q={q}: rank {}", rep.rank);
        }
    }

    #[test]
    fn duplicated_words_do_not_change_rank() {
        let grp = build_group(Family::Dihedral, 2).unwrap();
        let env = standard_env(&grp, Field::GF2).unwrap();
        let a = spanning_check(&grp, &env, &["1", "X"]).unwrap();
        let b = spanning_check(&grp, &env, &["1", "X", "X"]).unwrap();
        assert_eq!(a.rank, 2);
        assert_eq!(b.rank, 2);
        assert!(!a.is_basis);
    }

    #[test]
    fn radical_filtration_kq16_and_kd8() {
        let grp = build_group(Family::Quaternion, 2).unwrap();
        let (x, y) = q_generators(&grp, Field::GF2).unwrap();
        let rep = radical_filtration(&grp, &[x, y]).unwrap();
        assert_eq!(rep.socle_dim, 1);
        // Layers 1, 2, …, 2, 1 over radical degrees 0..4q: the alternating
        // words of each length, with the two words of top length identified.
        let mut expected = vec![2usize; 4 * grp.q + 1];
        expected[0] = 1;
        expected[4 * grp.q] = 1;
        assert_eq!(rep.layer_dims, expected);

        let grp = build_group(Family::Dihedral, 2).unwrap();
        let env = standard_env(&grp, Field::GF2).unwrap();
        let rep = radical_filtration(&grp, &[env["X"].clone(), env["Y"].clone()]).unwrap();
        // Loewy length 2q+1 = 5: J⁴ ≠ 0, J⁵ = 0.
        assert_eq!(rep.layer_dims, vec![1, 2, 2, 2, 1]);
        assert_eq!(rep.socle_dim, 1);
    }

    #[test]
    fn radical_filtration_cyclic_two() {
        let grp = build_group(Family::Cyclic, 2).unwrap();
        let env = standard_env(&grp, Field::GF2).unwrap();
        let rep = radical_filtration(&grp, &[env["X"].clone()]).unwrap();
        assert_eq!(rep.layer_dims, vec![1, 1]);
    }

    #[test]
    fn augmentation_is_an_algebra_map() {
        let grp = build_group(Family::Semidihedral, 2).unwrap();
        let env = standard_env(&grp, Field::GF2).unwrap();
        let a = eval_expr(&grp, &env, "1 + g + h*g^3").unwrap();
        let b = eval_expr(&grp, &env, "g^2 + h").unwrap();
        let f = Field::GF2;
        assert_eq!(
            a.mul(&b, &grp).augmentation(),
            f.mul(a.augmentation(), b.augmentation())
        );
        let rep = radical_filtration(&grp, &[eval_expr(&grp, &env, "1+g").unwrap()]);
        assert!(rep.is_ok());
        assert!(radical_filtration(&grp, &[eval_expr(&grp, &env, "g").unwrap()]).is_err());
    }
}
