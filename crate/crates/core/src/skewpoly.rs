//! Arithmetic in the skew polynomial ring `R[x; alpha]`, where `x r = alpha(r) x`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::endo::{is_alpha_ideal, is_alpha_star_rigid, AlphaPowers, Endo};
use crate::error::{Error, Result};
use crate::radical::{prime_radical, IdealSet};
use crate::ring::{Elem, FiniteRing};
use crate::search::{Ctx, PairStream};

/// The context `(R, alpha)` shared by a family of skew polynomials.
pub struct SkewRing {
    alpha: Endo,
    powers: AlphaPowers,
    radical: OnceLock<std::result::Result<RadicalInfo, String>>,
}

struct RadicalInfo {
    ideal: IdealSet,
    /// `alpha(*)` ring whose prime radical is an alpha-ideal.
    qualifies: bool,
    /// Coefficientwise membership decides radical membership in `R[x; alpha]`.
    exact: bool,
}

impl fmt::Debug for SkewRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SkewRing({}[x; {}])",
            self.ring().provenance(),
            self.alpha.label()
        )
    }
}

impl SkewRing {
    pub fn new(alpha: &Endo) -> Arc<SkewRing> {
        Arc::new(SkewRing {
            powers: alpha.powers(),
            alpha: alpha.clone(),
            radical: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        self.alpha.ring()
    }

    pub fn alpha(&self) -> &Endo {
        &self.alpha
    }

    pub fn powers(&self) -> &AlphaPowers {
        &self.powers
    }

    fn radical_info(&self) -> Result<&RadicalInfo> {
        self.radical
            .get_or_init(|| {
                let ideal = prime_radical(self.ring()).map_err(|e| e.to_string())?;
                let qualifies = is_alpha_star_rigid(&self.alpha, &ideal).holds()
                    && is_alpha_ideal(&ideal, &self.alpha);
                // for alpha = id the prime radical of R[x] is N*(R)[x]
                let exact = qualifies || self.alpha.is_identity();
                Ok(RadicalInfo {
                    ideal,
                    qualifies,
                    exact,
                })
            })
            .as_ref()
            .map_err(|e| Error::Internal(e.clone()))
    }

    pub fn radical(&self) -> Result<&IdealSet> {
        Ok(&self.radical_info()?.ideal)
    }

    /// Whether coefficientwise radical membership is exact for products here.
    pub fn qualifies(&self) -> Result<bool> {
        Ok(self.radical_info()?.qualifies)
    }

    /// Coefficients of the product of two coefficient slices (not trimmed).
    pub fn product_coeffs(&self, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
        let r = self.ring();
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![r.zero(); f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            if a == r.zero() {
                continue;
            }
            let tw = self.powers.get(i);
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = r.add(out[i + j], r.mul(a, tw[b as usize]));
            }
        }
        out
    }
}

/// A polynomial over a [`SkewRing`], kept without trailing zeros.
#[derive(Clone)]
pub struct SkewPoly {
    ctx: Arc<SkewRing>,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly({:?})", self.coeffs)
    }
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) && self.coeffs == other.coeffs
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let r = self.ctx.ring();
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != r.zero())
            .map(|(i, &a)| match i {
                0 => r.format_elem(a),
                1 => format!("{}x", r.format_elem(a)),
                _ => format!("{}x^{i}", r.format_elem(a)),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl SkewPoly {
    pub fn new(ctx: &Arc<SkewRing>, mut coeffs: Vec<Elem>) -> Result<SkewPoly> {
        let r = ctx.ring();
        if let Some(&bad) = coeffs.iter().find(|&&a| a as usize >= r.size()) {
            return Err(Error::ContextMismatch(format!(
                "coefficient {bad} is not an element"
            )));
        }
        while coeffs.last() == Some(&r.zero()) {
            coeffs.pop();
        }
        Ok(SkewPoly {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    pub fn zero(ctx: &Arc<SkewRing>) -> SkewPoly {
        SkewPoly {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(ctx: &Arc<SkewRing>, a: Elem) -> Result<SkewPoly> {
        SkewPoly::new(ctx, vec![a])
    }

    /// `a x^k`.
    pub fn monomial(ctx: &Arc<SkewRing>, a: Elem, k: usize) -> Result<SkewPoly> {
        let mut c = vec![ctx.ring().zero(); k + 1];
        c[k] = a;
        SkewPoly::new(ctx, c)
    }

    pub fn context(&self) -> &Arc<SkewRing> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs
            .get(i)
            .copied()
            .unwrap_or(self.ctx.ring().zero())
    }
}

fn same_context(f: &SkewPoly, g: &SkewPoly) -> Result<()> {
    if Arc::ptr_eq(&f.ctx, &g.ctx) {
        Ok(())
    } else {
        Err(Error::ContextMismatch(
            "polynomials live over different skew rings".into(),
        ))
    }
}

/// Product in `R[x; alpha]`: the coefficient of `x^l` is `sum a_i alpha^i(b_j)` over `i + j = l`.
pub fn smul(f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
    same_context(f, g)?;
    let coeffs = f.ctx.product_coeffs(&f.coeffs, &g.coeffs);
    SkewPoly::new(&f.ctx, coeffs)
}

pub fn sadd(f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
    same_context(f, g)?;
    let r = f.ctx.ring();
    let len = f.coeffs.len().max(g.coeffs.len());
    let coeffs = (0..len).map(|i| r.add(f.coeff(i), g.coeff(i))).collect();
    SkewPoly::new(&f.ctx, coeffs)
}

pub fn sneg(f: &SkewPoly) -> SkewPoly {
    let r = f.ctx.ring();
    SkewPoly {
        ctx: f.ctx.clone(),
        coeffs: f.coeffs.iter().map(|&a| r.neg(a)).collect(),
    }
}

/// Three-valued answer for radical membership questions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

/// Membership of `p` in the prime radical of `R[x; alpha]`, judged
/// coefficientwise. A negative answer is only trusted when `R` is an
/// `alpha(*)` ring whose prime radical is an alpha-ideal, or when `alpha` is
/// the identity.
pub fn poly_in_radical_extension(p: &SkewPoly) -> Result<Tri> {
    let info = p.ctx.radical_info()?;
    if p.coeffs.iter().all(|&a| info.ideal.contains(a)) {
        Ok(Tri::Yes)
    } else if info.exact {
        Ok(Tri::No)
    } else {
        Ok(Tri::Unknown)
    }
}

/// Every pair of coefficient tuples of length `d + 1` whose skew product is
/// zero, in lexicographic order of `(f, g)` with the constant term most
/// significant. Stops early, setting [`AnnihilatingPairs::truncated`], once
/// `cap` elementary products have been spent.
pub struct AnnihilatingPairs {
    stream: PairStream,
}

impl AnnihilatingPairs {
    pub fn truncated(&self) -> bool {
        self.stream.truncated
    }
}

pub fn annihilating_pairs(ctx: &Arc<SkewRing>, d: usize, cap: u64) -> AnnihilatingPairs {
    AnnihilatingPairs {
        stream: PairStream::new(Ctx::new(ctx.ring(), ctx.powers(), d), cap, false),
    }
}

impl Iterator for AnnihilatingPairs {
    type Item = (Vec<Elem>, Vec<Elem>);

    fn next(&mut self) -> Option<Self::Item> {
        self.stream
            .next_pair()
            .map(|(f, g)| (f.to_vec(), g.to_vec()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_full_matrix, build_product, build_zn};

    fn swap_ctx() -> Arc<SkewRing> {
        let z2 = build_zn(2).unwrap();
        let r = build_product(&z2, &z2).unwrap();
        SkewRing::new(&Endo::new(&r, vec![0, 2, 1, 3], "swap").unwrap())
    }

    #[test]
    fn swap_product_vanishes() {
        let ctx = swap_ctx();
        // (1,0) = 2, (0,1) = 1
        let f = SkewPoly::new(&ctx, vec![2, 1]).unwrap();
        let g = SkewPoly::new(&ctx, vec![1, 1]).unwrap();
        assert!(smul(&f, &g).unwrap().is_zero());
    }

    #[test]
    fn defining_relation() {
        let ctx = swap_ctx();
        let x = SkewPoly::monomial(&ctx, 3, 1).unwrap();
        for r in 0..4 {
            let c = SkewPoly::constant(&ctx, r).unwrap();
            let lhs = smul(&x, &c).unwrap();
            let rhs = smul(&SkewPoly::constant(&ctx, ctx.alpha().apply(r)).unwrap(), &x).unwrap();
            assert_eq!(lhs, rhs);
        }
        let a = SkewPoly::monomial(&ctx, 2, 3).unwrap();
        let b = SkewPoly::monomial(&ctx, 2, 1).unwrap();
        // (1,0) x^3 (1,0) x = (1,0) swap^3((1,0)) x^4 = 0
        assert!(smul(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn additive_group() {
        let ctx = swap_ctx();
        let f = SkewPoly::new(&ctx, vec![1, 2, 3]).unwrap();
        assert!(sadd(&f, &sneg(&f)).unwrap().is_zero());
        assert_eq!(sadd(&SkewPoly::zero(&ctx), &f).unwrap(), f);
        let other = swap_ctx();
        assert!(sadd(&f, &SkewPoly::zero(&other)).is_err());
    }

    #[test]
    fn pair_stream_contents() {
        let z4 = build_zn(4).unwrap();
        let ctx = SkewRing::new(&Endo::identity(&z4));
        let pairs: Vec<_> = annihilating_pairs(&ctx, 0, u64::MAX).collect();
        assert_eq!(pairs.len(), 8);
        assert!(pairs.contains(&(vec![2], vec![2])));
        let z3 = build_zn(3).unwrap();
        let ctx = SkewRing::new(&Endo::identity(&z3));
        assert!(annihilating_pairs(&ctx, 2, u64::MAX)
            .all(|(f, g)| f.iter().all(|&a| a == 0) || g.iter().all(|&b| b == 0)));
        let ctx = swap_ctx();
        assert!(annihilating_pairs(&ctx, 1, u64::MAX).any(|p| p == (vec![2, 1], vec![1, 1])));
    }

    #[test]
    fn stream_is_sorted() {
        let ctx = swap_ctx();
        let pairs: Vec<_> = annihilating_pairs(&ctx, 1, u64::MAX).collect();
        assert!(pairs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn radical_membership() {
        let z4 = build_zn(4).unwrap();
        let ctx = SkewRing::new(&Endo::identity(&z4));
        assert_eq!(
            poly_in_radical_extension(&SkewPoly::monomial(&ctx, 2, 1).unwrap()).unwrap(),
            Tri::Yes
        );
        assert_eq!(
            poly_in_radical_extension(&SkewPoly::zero(&ctx)).unwrap(),
            Tri::Yes
        );
        let m2 = build_full_matrix(&build_zn(2).unwrap(), 2).unwrap();
        let ctx = SkewRing::new(&Endo::identity(&m2));
        let e11 = m2.matrix_unit(1, 1).unwrap();
        assert_eq!(
            poly_in_radical_extension(&SkewPoly::monomial(&ctx, e11, 1).unwrap()).unwrap(),
            Tri::No
        );
    }
}
