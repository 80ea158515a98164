//! Cohomology of graded complete intersections: divided partial
//! derivatives, the Clifford DG algebra of the Hessian form, Ext and
//! Hochschild cohomology, the Koszul-dual Hochschild complex, and matrix
//! factorisations.
//!
//! For R = Q/(f₁,…,f_c) with Q = k[x₁,…,x_n] and the f_k a homogeneous
//! regular sequence in 𝔪², the Hessian data consists of first partials
//! b_{i,k} = ∂f_k/∂x_i and the symmetric matrix a_{i,j,k} of second
//! partials, with the *divided* second derivative ∂^{(2)} on the diagonal
//! (the second Taylor coefficient, so ∂^{(2)}(x²)/∂x² = 1 — in
//! characteristic two the honest second partial would vanish).  The
//! Clifford algebra Cliff(𝗊) over R has generators x̂_i in degree
//! (−1,−|x_i|) and central s_k in degree (−2,−|f_k|), relations
//! x̂_ix̂_j + x̂_jx̂_i = Σ ā_{i,j,k}s_k, x̂_i² = Σ ā_{i,i,k}s_k, and
//! differential d(x̂_i) = Σ b̄_{i,k}s_k.  Then Ext_R(k,k) = k⊗_R Cliff(𝗊)
//! and HH*(R) = H*(Cliff(𝗊), d).
//!
//! For quadratic graded-commutative R (automatically Koszul) the same
//! Hochschild cohomology is the homology of R ⊗ R! under [e,−] with
//! e = Σ x_i ⊗ x̂_i — an independent route used for cross-checking.
//!
//! Everything is computed slicewise: each multidegree piece is a finite
//! matrix over the coefficient field, and homology reduces to exact
//! kernel/rank computations.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::exactlin::{homology_dim, ComplexSlice, FElt, Field, LinError, Matrix};
use crate::ncalg::{GenInfo, Mode, Monomial, MultiDegree, NcError, Poly, Presentation};

#[derive(Debug, Error)]
pub enum HochciError {
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error("complete-intersection input must be commutative over a prime field")]
    BadInput,
    #[error("relation has a term below 𝔪²: {0}")]
    NotInSquare(String),
    #[error("no positive weight functional found for the grading")]
    NoWeightFunctional,
    #[error("Hilbert series mismatch at weight {weight}: expected {expected}, got {got} — sequence not regular")]
    NotRegular { weight: i64, expected: i64, got: i64 },
    #[error("matrix factorisation shape mismatch")]
    Shape,
    #[error("parse error at line {0}: {1}")]
    Parse(usize, String),
}

// ----- integer-coefficient polynomials for divided derivatives -----

/// Commutative polynomial over ℤ, keyed by exponent vectors.  Divided
/// derivatives need honest integer arithmetic before reduction mod p.
pub type ZPoly = BTreeMap<Vec<u32>, i64>;

fn zpoly_from(pres: &Presentation, p: &Poly) -> ZPoly {
    let n = pres.gens.len();
    let mut out = ZPoly::new();
    for (m, &c) in &p.terms {
        let mut e = vec![0u32; n];
        for &g in &m.word {
            e[g as usize] += 1;
        }
        *out.entry(e).or_insert(0) += c as i64;
    }
    out
}

fn zpoly_to_poly(field: Field, e_to_word: impl Fn(&[u32]) -> Monomial, z: &ZPoly) -> Poly {
    let p = field.characteristic() as i64;
    let mut out = Poly::zero();
    for (e, &c) in z {
        let c = ((c % p) + p) % p;
        if c != 0 {
            out.add_term(field, e_to_word(e), c as FElt);
        }
    }
    out
}

fn word_of(e: &[u32]) -> Monomial {
    let mut word = Vec::new();
    for (i, &a) in e.iter().enumerate() {
        word.extend(std::iter::repeat(i as u8).take(a as usize));
    }
    Monomial { word, vertex: 0 }
}

/// ∂f/∂x_i over ℤ.
pub fn zpartial(f: &ZPoly, i: usize) -> ZPoly {
    let mut out = ZPoly::new();
    for (e, &c) in f {
        if e[i] > 0 {
            let mut e2 = e.clone();
            e2[i] -= 1;
            *out.entry(e2).or_insert(0) += c * e[i] as i64;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Divided second derivative ∂^{(2)}f/∂x_i² over ℤ: the coefficient is
/// the binomial C(a,2), the second Taylor coefficient.
pub fn zdivided2(f: &ZPoly, i: usize) -> ZPoly {
    let mut out = ZPoly::new();
    for (e, &c) in f {
        if e[i] > 1 {
            let mut e2 = e.clone();
            e2[i] -= 2;
            let a = e[i] as i64;
            *out.entry(e2).or_insert(0) += c * (a * (a - 1) / 2);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn zscale(f: &ZPoly, c: i64) -> ZPoly {
    f.iter().map(|(e, &x)| (e.clone(), x * c)).collect()
}

// ----- complete intersection presentations -----

/// A graded complete intersection R = Q/(f₁,…,f_c): a commutative catalog
/// presentation together with integer lifts of the relations.
pub struct CIPresentation {
    pub pres: Presentation,
    pub zrels: Vec<ZPoly>,
}

impl CIPresentation {
    pub fn new(pres: Presentation) -> Result<CIPresentation, HochciError> {
        if pres.mode != Mode::Commutative || pres.field.characteristic() as u32 == 4 {
            return Err(HochciError::BadInput);
        }
        // Clifford slices probe R in much lower internal degrees than the
        // ring's own computations; deepen the truncation bound up front.
        let pres = if pres.bound < 96 {
            Presentation::new(
                pres.field,
                pres.arity,
                pres.scale,
                pres.mode,
                pres.vertices.clone(),
                pres.gens.clone(),
                pres.relations.clone(),
                96,
            )?
        } else {
            pres
        };
        for rel in &pres.relations {
            for m in rel.terms.keys() {
                if m.len() < 2 {
                    return Err(HochciError::NotInSquare(pres.monomial_name(m)));
                }
            }
        }
        let zrels = pres.relations.iter().map(|r| zpoly_from(&pres, r)).collect();
        Ok(CIPresentation { pres, zrels })
    }

    pub fn n(&self) -> usize {
        self.pres.gens.len()
    }

    pub fn c(&self) -> usize {
        self.zrels.len()
    }

    /// A linear functional λ with −λ·|x_i| ≥ 1 for every generator,
    /// found by a small deterministic grid search.
    fn weight_functional(&self) -> Result<Vec<i64>, HochciError> {
        let arity = self.pres.arity;
        let mut best: Option<(i64, Vec<i64>)> = None;
        let mut lambda = vec![-4i64; arity];
        loop {
            let ws: Vec<i64> = self
                .pres
                .gens
                .iter()
                .map(|g| -g.degree.0.iter().zip(&lambda).map(|(&d, &l)| d as i64 * l).sum::<i64>())
                .collect();
            if ws.iter().all(|&w| w >= 1) {
                let total: i64 = ws.iter().sum();
                if best.as_ref().map_or(true, |(t, _)| total < *t) {
                    best = Some((total, lambda.clone()));
                }
            }
            // odometer increment over [−4,4]^arity
            let mut i = 0;
            loop {
                if i == arity {
                    return best.map(|(_, l)| l).ok_or(HochciError::NoWeightFunctional);
                }
                lambda[i] += 1;
                if lambda[i] <= 4 {
                    break;
                }
                lambda[i] = -4;
                i += 1;
            }
        }
    }

    fn weight(&self, lambda: &[i64], d: &MultiDegree) -> i64 {
        -d.0.iter().zip(lambda).map(|(&x, &l)| x as i64 * l).sum::<i64>()
    }

    /// Certify that the relations form a regular sequence by comparing the
    /// weighted Hilbert series of R against the complete-intersection
    /// product formula Π(1−t^{w(f_k)}) / Π(1−t^{w(x_i)}) up to the bound.
    pub fn certify_regular(&self, bound: i64) -> Result<(), HochciError> {
        let lambda = self.weight_functional()?;
        let wx: Vec<i64> = self.pres.gens.iter().map(|g| self.weight(&lambda, &g.degree)).collect();
        let wf: Vec<i64> = self
            .pres
            .relations
            .iter()
            .map(|r| {
                let m = r.terms.keys().next().unwrap();
                self.weight(&lambda, &self.pres.degree_of(m))
            })
            .collect();
        let expected = ci_series(&wx, &wf, bound);
        // Actual dims: enumerate the multidegrees reachable below the
        // weight bound and sum the graded piece dimensions per weight.
        let mut degrees: BTreeMap<Vec<i32>, ()> = BTreeMap::new();
        let n = self.n();
        let mut e = vec![0u32; n];
        'enumerate: loop {
            let w: i64 = e.iter().zip(&wx).map(|(&a, &wi)| a as i64 * wi).sum();
            if w <= bound {
                let mut d = MultiDegree::zero(self.pres.arity);
                for (i, &a) in e.iter().enumerate() {
                    for _ in 0..a {
                        d = d.add(&self.pres.gens[i].degree);
                    }
                }
                degrees.insert(d.0, ());
            }
            // odometer with per-digit weight pruning
            let mut i = 0;
            loop {
                if i == n {
                    break 'enumerate;
                }
                e[i] += 1;
                let w: i64 = e.iter().zip(&wx).map(|(&a, &wi)| a as i64 * wi).sum();
                if w <= bound {
                    break;
                }
                e[i] = 0;
                i += 1;
            }
        }
        let mut got = vec![0i64; bound as usize + 1];
        for d in degrees.keys() {
            let md = MultiDegree(d.clone());
            let w = self.weight(&lambda, &md);
            if (0..=bound).contains(&w) {
                got[w as usize] += self.pres.degree_basis(&md)?.dimension as i64;
            }
        }
        for w in 0..=bound as usize {
            if got[w] != expected[w] {
                return Err(HochciError::NotRegular {
                    weight: w as i64,
                    expected: expected[w],
                    got: got[w],
                });
            }
        }
        Ok(())
    }
}

/// Coefficients of Π(1−t^{wf}) / Π(1−t^{wx}) up to degree `bound`.
fn ci_series(wx: &[i64], wf: &[i64], bound: i64) -> Vec<i64> {
    let b = bound as usize;
    let mut c = vec![0i64; b + 1];
    c[0] = 1;
    for &w in wf {
        let w = w as usize;
        let mut next = c.clone();
        for i in 0..=b {
            if i >= w {
                next[i] -= c[i - w];
            }
        }
        c = next;
    }
    for &w in wx {
        let w = w as usize;
        // divide by (1 − t^w): c[i] += c[i−w]
        for i in w..=b {
            c[i] += c[i - w];
        }
    }
    c
}

// ----- divided Jacobian and the Clifford DG algebra -----

/// First partials b_{i,k} and Hessian coefficients a_{i,j,k}, both over ℤ
/// (for the formal identity 2∂^{(2)} = ∂²) and reduced into R.
pub struct DividedJacobian {
    /// b[i][k] = image of ∂f_k/∂x_i in R.
    pub b: Vec<Vec<Poly>>,
    /// a[i][j][k]: mixed second partial for i ≠ j, divided square for i = j.
    pub a: Vec<Vec<Vec<Poly>>>,
    /// Integer-level Hessian (for constant terms / the Ext presentation).
    pub za: Vec<Vec<Vec<ZPoly>>>,
}

pub fn divided_jacobian(ci: &CIPresentation) -> Result<DividedJacobian, HochciError> {
    let n = ci.n();
    let pres = &ci.pres;
    let reduce_z = |z: &ZPoly| -> Result<Poly, NcError> {
        pres.reduce(&zpoly_to_poly(pres.field, word_of, z))
    };
    let mut b = Vec::with_capacity(n);
    let mut a = vec![vec![Vec::new(); n]; n];
    let mut za = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        let mut bi = Vec::new();
        for f in &ci.zrels {
            bi.push(reduce_z(&zpartial(f, i))?);
        }
        b.push(bi);
        for j in 0..n {
            for f in &ci.zrels {
                let zaijk = if i == j {
                    let div = zdivided2(f, i);
                    // formal check: the honest second partial is 2·∂^{(2)}
                    debug_assert_eq!(zpartial(&zpartial(f, i), i), zscale(&div, 2));
                    div
                } else {
                    zpartial(&zpartial(f, i), j)
                };
                a[i][j].push(reduce_z(&zaijk)?);
                za[i][j].push(zaijk);
            }
        }
    }
    Ok(DividedJacobian { b, a, za })
}

/// The Clifford DG algebra of the Hessian form, realised slicewise: the
/// multidegree-D piece has basis x̂^ε s^α ⊗ m with m a basis monomial of R,
/// and d acts as a derivation killing R and the s_k.
pub struct CliffordComplex<'a> {
    pub ci: &'a CIPresentation,
    pub jac: DividedJacobian,
    /// Degrees including the leading homological coordinate.
    pub xhat_deg: Vec<MultiDegree>,
    pub s_deg: Vec<MultiDegree>,
    pub xhat_names: Vec<String>,
    pub s_names: Vec<String>,
}

pub fn clifford_complex(ci: &CIPresentation) -> Result<CliffordComplex<'_>, HochciError> {
    let jac = divided_jacobian(ci)?;
    let mut xhat_deg = Vec::new();
    let mut xhat_names = Vec::new();
    for g in &ci.pres.gens {
        let mut d = vec![-1i32];
        d.extend(g.degree.neg().0.iter());
        xhat_deg.push(MultiDegree(d));
        xhat_names.push(format!("{}h", g.name));
    }
    let mut s_deg = Vec::new();
    let mut s_names = Vec::new();
    for (k, r) in ci.pres.relations.iter().enumerate() {
        let m = r.terms.keys().next().unwrap();
        let mut d = vec![-2i32];
        d.extend(ci.pres.degree_of(m).neg().0.iter());
        s_deg.push(MultiDegree(d));
        s_names.push(if ci.c() == 1 { "s".to_string() } else { format!("s{}", k + 1) });
    }
    Ok(CliffordComplex { ci, jac, xhat_deg, s_deg, xhat_names, s_names })
}

type CliffBasis = Vec<(u32, Vec<u32>, Monomial)>;

impl CliffordComplex<'_> {
    /// Deterministic basis of the multidegree-d slice: subsets ε of the x̂
    /// (as bitmasks, ascending), s exponents α (lex), R basis monomials.
    pub fn slice_basis(&self, d: &[i32]) -> Result<CliffBasis, HochciError> {
        let n = self.ci.n();
        let c = self.ci.c();
        let h = d[0];
        let mut out = Vec::new();
        if h > 0 {
            return Ok(out);
        }
        for mask in 0u32..(1 << n) {
            let eps = mask.count_ones() as i32;
            let rem = -h - eps;
            if rem < 0 || rem % 2 != 0 {
                continue;
            }
            let mut alphas: Vec<Vec<u32>> = Vec::new();
            compositions(rem as u32 / 2, c, &mut Vec::new(), &mut alphas);
            for alpha in alphas {
                // internal degree left for the R factor
                let mut rest: Vec<i64> = d[1..].iter().map(|&x| x as i64).collect();
                for i in 0..n {
                    if mask >> i & 1 == 1 {
                        for (r, &x) in rest.iter_mut().zip(&self.xhat_deg[i].0[1..]) {
                            *r -= x as i64;
                        }
                    }
                }
                for (k, &a) in alpha.iter().enumerate() {
                    for (r, &x) in rest.iter_mut().zip(&self.s_deg[k].0[1..]) {
                        *r -= a as i64 * x as i64;
                    }
                }
                let rd = MultiDegree(rest.iter().map(|&x| x as i32).collect());
                let piece = self.ci.pres.degree_basis(&rd)?;
                for m in piece.basis {
                    out.push((mask, alpha.clone(), m));
                }
            }
        }
        Ok(out)
    }

    /// Matrix of d from the slice at `d` to the slice at `d + (−1,0,…,0)`.
    pub fn d_matrix(&self, d: &[i32]) -> Result<Matrix, HochciError> {
        let src = self.slice_basis(d)?;
        let mut tgt_deg = d.to_vec();
        tgt_deg[0] -= 1;
        let tgt = self.slice_basis(&tgt_deg)?;
        let index: HashMap<(u32, Vec<u32>, Monomial), usize> = tgt
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, (m, a, r))| ((m, a, r), i))
            .collect();
        let field = self.ci.pres.field;
        let n = self.ci.n();
        let c = self.ci.c();
        let mut mat = Matrix::zero(field, tgt.len(), src.len());
        for (col, (mask, alpha, r)) in src.iter().enumerate() {
            for i in 0..n {
                if mask >> i & 1 == 0 {
                    continue;
                }
                // sign from commuting d past the earlier Clifford letters
                let pos = (mask & ((1 << i) - 1)).count_ones() as i64;
                let sign = if pos % 2 == 0 { 1 } else { field.neg(1) };
                for k in 0..c {
                    let bp = &self.jac.b[i][k];
                    if bp.is_zero() {
                        continue;
                    }
                    let prod = self
                        .ci
                        .pres
                        .reduce(&self.ci.pres.mul_polys(bp, &Poly::monomial(r.clone(), 1)))
                        .map_err(HochciError::Nc)?;
                    let mut alpha2 = alpha.clone();
                    alpha2[k] += 1;
                    let mask2 = mask & !(1 << i);
                    for (m2, &cf) in &prod.terms {
                        if let Some(&row) = index.get(&(mask2, alpha2.clone(), m2.clone())) {
                            let add = field.mul(sign, cf);
                            mat.set(row, col, field.add(mat.get(row, col), add));
                        }
                    }
                }
            }
        }
        Ok(mat)
    }

    pub fn basis_name(&self, mask: u32, alpha: &[u32], r: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.xhat_names.iter().enumerate() {
            if mask >> i & 1 == 1 {
                parts.push(name.clone());
            }
        }
        for (k, &a) in alpha.iter().enumerate() {
            if a == 1 {
                parts.push(self.s_names[k].clone());
            } else if a > 1 {
                parts.push(format!("{}^{a}", self.s_names[k]));
            }
        }
        if !r.word.is_empty() {
            parts.push(self.ci.pres.monomial_name(r));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Hochschild cohomology dimension in one multidegree, with
    /// representative descriptions.
    pub fn hh_dim(&self, d: &[i32]) -> Result<(usize, Vec<String>), HochciError> {
        let mut up = d.to_vec();
        up[0] += 1;
        let d_in = self.d_matrix(&up)?;
        let d_out = self.d_matrix(d)?;
        let basis = self.slice_basis(d)?;
        let (dim, reps) = homology_dim(&ComplexSlice { d_in, d_out })?;
        let mut names = Vec::new();
        for j in 0..dim {
            let col = reps.col(j);
            let terms: Vec<String> = col
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != 0)
                .map(|(i, _)| {
                    let (m, a, r) = &basis[i];
                    self.basis_name(*m, a, r)
                })
                .collect();
            names.push(terms.join("+"));
        }
        Ok((dim, names))
    }

    /// d² = 0 on the slice at `d`.
    pub fn check_d_squared(&self, d: &[i32]) -> Result<bool, HochciError> {
        let first = self.d_matrix(d)?;
        let mut down = d.to_vec();
        down[0] -= 1;
        let second = self.d_matrix(&down)?;
        Ok(second.mul_mat(&first).is_zero())
    }
}

fn compositions(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 0 {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if parts == 1 {
        cur.push(total);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for a in 0..=total {
        cur.push(a);
        compositions(total - a, parts - 1, cur, out);
        cur.pop();
    }
}

/// Ext_R(k,k) = k ⊗_R Cliff(𝗊): generators x̂_i, s_k with the
/// constant-coefficient Clifford relations a_{i,j,k}(0), the s_k central.
pub fn ext_ci(ci: &CIPresentation) -> Result<Presentation, HochciError> {
    let cliff = clifford_complex(ci)?;
    let n = ci.n();
    let c = ci.c();
    let field = ci.pres.field;
    let mut gens = Vec::new();
    for i in 0..n {
        gens.push(GenInfo {
            name: cliff.xhat_names[i].clone(),
            degree: cliff.xhat_deg[i].clone(),
            source: 0,
            target: 0,
        });
    }
    for k in 0..c {
        gens.push(GenInfo {
            name: cliff.s_names[k].clone(),
            degree: cliff.s_deg[k].clone(),
            source: 0,
            target: 0,
        });
    }
    let p = field.characteristic() as i64;
    let a0 = |i: usize, j: usize, k: usize| -> FElt {
        let z = &cliff.jac.za[i][j][k];
        let c0 = z.get(&vec![0u32; n]).copied().unwrap_or(0);
        (((c0 % p) + p) % p) as FElt
    };
    let gmono = |idx: &[usize]| Monomial { word: idx.iter().map(|&i| i as u8).collect(), vertex: 0 };
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut rel = Poly::zero();
            if i == j {
                rel.add_term(field, gmono(&[i, i]), 1);
            } else {
                rel.add_term(field, gmono(&[i, j]), 1);
                rel.add_term(field, gmono(&[j, i]), 1);
            }
            for k in 0..c {
                let cf = a0(i, j, k);
                if cf != 0 {
                    rel.add_term(field, gmono(&[n + k]), field.neg(cf));
                }
            }
            if !rel.is_zero() {
                relations.push(rel);
            }
        }
    }
    // the s_k are central
    for k in 0..c {
        for i in 0..n {
            let mut rel = Poly::zero();
            rel.add_term(field, gmono(&[n + k, i]), 1);
            rel.add_term(field, gmono(&[i, n + k]), field.neg(1));
            relations.push(rel);
        }
        for l in k + 1..c {
            let mut rel = Poly::zero();
            rel.add_term(field, gmono(&[n + k, n + l]), 1);
            rel.add_term(field, gmono(&[n + l, n + k]), field.neg(1));
            relations.push(rel);
        }
    }
    Presentation::new(
        field,
        ci.pres.arity + 1,
        ci.pres.scale,
        Mode::Free,
        Vec::new(),
        gens,
        relations,
        ci.pres.bound,
    )
    .map_err(HochciError::Nc)
}

// ----- Koszul-dual Hochschild complex -----

/// Hochschild cohomology of a quadratic graded-commutative algebra in one
/// multidegree, via the homology of R ⊗ R! under [e,−], e = Σ x_i ⊗ x̂_i.
/// The dual generators carry homological degree −1.
pub fn koszul_hh_dim(r: &Presentation, d: &[i32]) -> Result<usize, HochciError> {
    if r.mode != Mode::Commutative {
        return Err(HochciError::BadInput);
    }
    let dual = r.quadratic_dual().map_err(HochciError::Nc)?;
    let d_in = koszul_matrix(r, &dual, &{
        let mut up = d.to_vec();
        up[0] += 1;
        up
    })?;
    let d_out = koszul_matrix(r, &dual, d)?;
    let (dim, _) = homology_dim(&ComplexSlice { d_in, d_out })?;
    Ok(dim)
}

type PairBasis = Vec<(Monomial, Monomial)>;

/// Basis of the multidegree-d slice of R ⊗ R!: pairs (r-monomial,
/// dual-monomial) with the dual factor of word length −d[0].
fn koszul_basis(r: &Presentation, dual: &Presentation, d: &[i32]) -> Result<PairBasis, HochciError> {
    let len = -d[0];
    let mut out = Vec::new();
    if len < 0 {
        return Ok(out);
    }
    // possible dual-factor degrees: sums of `len` generator degrees
    let mut degs: Vec<MultiDegree> = vec![MultiDegree::zero(r.arity)];
    for _ in 0..len {
        let mut next: BTreeMap<Vec<i32>, ()> = BTreeMap::new();
        for base in &degs {
            for g in &dual.gens {
                next.insert(base.add(&g.degree).0, ());
            }
        }
        degs = next.keys().map(|k| MultiDegree(k.clone())).collect();
    }
    for dd in degs {
        let rd = MultiDegree(
            d[1..]
                .iter()
                .zip(&dd.0)
                .map(|(&t, &x)| t - x)
                .collect(),
        );
        let dual_piece = dual.degree_basis(&dd)?;
        if dual_piece.dimension == 0 {
            continue;
        }
        let r_piece = r.degree_basis(&rd)?;
        for rho in &dual_piece.basis {
            if rho.len() != len as usize {
                continue;
            }
            for m in &r_piece.basis {
                out.push((m.clone(), rho.clone()));
            }
        }
    }
    Ok(out)
}

/// Matrix of [e,−] from the slice at `d` to the slice at `d + (−1,0,…)`.
fn koszul_matrix(r: &Presentation, dual: &Presentation, d: &[i32]) -> Result<Matrix, HochciError> {
    let src = koszul_basis(r, dual, d)?;
    let mut td = d.to_vec();
    td[0] -= 1;
    let tgt = koszul_basis(r, dual, &td)?;
    let index: HashMap<(Monomial, Monomial), usize> =
        tgt.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let field = r.field;
    let mut mat = Matrix::zero(field, tgt.len(), src.len());
    for (col, (m, rho)) in src.iter().enumerate() {
        for i in 0..r.gens.len() {
            let xi = Poly::monomial(Monomial { word: vec![i as u8], vertex: 0 }, 1);
            let xr = r.reduce(&r.mul_polys(&xi, &Poly::monomial(m.clone(), 1)))
                .map_err(HochciError::Nc)?;
            if xr.is_zero() {
                continue;
            }
            let xh = Poly::monomial(Monomial { word: vec![i as u8], vertex: 0 }, 1);
            let rho_p = Poly::monomial(rho.clone(), 1);
            let anti = dual
                .reduce(&dual.mul_polys(&xh, &rho_p).add(field, &dual.mul_polys(&rho_p, &xh)))
                .map_err(HochciError::Nc)?;
            if anti.is_zero() {
                continue;
            }
            for (m2, &c1) in &xr.terms {
                for (rho2, &c2) in &anti.terms {
                    if let Some(&row) = index.get(&(m2.clone(), rho2.clone())) {
                        let add = field.mul(c1, c2);
                        mat.set(row, col, field.add(mat.get(row, col), add));
                    }
                }
            }
        }
    }
    Ok(mat)
}

// ----- degree-line enumeration -----

/// Exhaustively list the monomial basis in each requested multidegree.
pub fn degree_monomial_enumeration(
    pres: &Presentation,
    degrees: &[MultiDegree],
) -> Result<Vec<(MultiDegree, Vec<String>)>, NcError> {
    let mut out = Vec::new();
    for d in degrees {
        let piece = pres.degree_basis(d)?;
        let names = piece.basis.iter().map(|m| pres.monomial_name(m)).collect();
        out.push((d.clone(), names));
    }
    Ok(out)
}

// ----- matrix factorisations -----

/// Parse a matrix-factorisation file: presentation header lines (`field`,
/// `grading`, `gen`), then `f : expr`, then `A : a,b;c,d` and `B : …` with
/// rows separated by `;`.  Entries are polynomial expressions; `0` is zero.
pub fn load_matrix_factorization(
    text: &str,
) -> Result<(Presentation, Poly, Vec<Vec<Poly>>, Vec<Vec<Poly>>), HochciError> {
    let mut header = String::new();
    let mut f: Option<String> = None;
    let mut mats: Vec<(char, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if let Some(rest) = l.strip_prefix("f :") {
            f = Some(rest.trim().to_string());
        } else if let Some(rest) = l.strip_prefix("A :") {
            mats.push(('A', rest.trim().to_string()));
        } else if let Some(rest) = l.strip_prefix("B :") {
            mats.push(('B', rest.trim().to_string()));
        } else if l.starts_with("field") || l.starts_with("grading") || l.starts_with("gen") {
            header.push_str(l);
            header.push('\n');
        } else {
            return Err(HochciError::Parse(lineno + 1, format!("unexpected line: {l}")));
        }
    }
    header.push_str("mode commutative\n");
    let pres = crate::ncalg::parse_presentation(&header).map_err(HochciError::Nc)?;
    let f = f.ok_or_else(|| HochciError::Parse(0, "missing f".into()))?;
    let f = pres.normal_form(&f).map_err(HochciError::Nc)?;
    let parse_mat = |src: &str| -> Result<Vec<Vec<Poly>>, HochciError> {
        let mut rows = Vec::new();
        for row in src.split(';') {
            let mut r = Vec::new();
            for e in row.split(',') {
                let e = e.trim();
                let p = if e == "0" {
                    Poly::zero()
                } else {
                    pres.normal_form(e).map_err(HochciError::Nc)?
                };
                r.push(p);
            }
            rows.push(r);
        }
        Ok(rows)
    };
    let a = mats
        .iter()
        .find(|(c, _)| *c == 'A')
        .ok_or_else(|| HochciError::Parse(0, "missing A".into()))?;
    let b = mats
        .iter()
        .find(|(c, _)| *c == 'B')
        .ok_or_else(|| HochciError::Parse(0, "missing B".into()))?;
    let am = parse_mat(&a.1)?;
    let bm = parse_mat(&b.1)?;
    Ok((pres, f, am, bm))
}

/// A·B = B·A = f·identity over the polynomial ring.
pub fn verify_matrix_factorization(
    pres: &Presentation,
    f: &Poly,
    a: &[Vec<Poly>],
    b: &[Vec<Poly>],
) -> Result<bool, HochciError> {
    let n = a.len();
    if n == 0
        || a.iter().any(|r| r.len() != n)
        || b.len() != n
        || b.iter().any(|r| r.len() != n)
    {
        return Err(HochciError::Shape);
    }
    let field = pres.field;
    for (first, second) in [(a, b), (b, a)] {
        for i in 0..n {
            for j in 0..n {
                let mut acc = Poly::zero();
                for (k, bk) in second.iter().enumerate() {
                    acc = acc.add(field, &pres.mul_polys(&first[i][k], &bk[j]));
                }
                let acc = pres.reduce(&acc).map_err(HochciError::Nc)?;
                let want = if i == j { f.clone() } else { Poly::zero() };
                if acc != want {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
