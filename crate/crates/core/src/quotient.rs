//! The quotient ring `R = E[x]/(P)` for a possibly non-monic `P`.
//!
//! With `d = deg P`, every class has exactly one representative
//! `A' + r_d x^d + ... + r_k x^k` where `deg A' < d` and each `r_i` lies in
//! the fixed residue system of `E/(p_d)`. When `p_d` is a unit the residue
//! system is `{0}` and this is ordinary reduction modulo a monic polynomial.

use crate::error::{Error, Result};
use crate::parse;
use crate::poly::Poly;
use crate::rings::CoeffRing;

/// An element of `R` in canonical form.
///
/// Holds the single canonical representative; [`low`](Self::low) and
/// [`tail`](Self::tail) split it at degree `d`. Equality of values is
/// equality in `R`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuotElem<T> {
    rep: Poly<T>,
}

impl<T: Clone> QuotElem<T> {
    pub fn zero() -> Self {
        QuotElem { rep: Poly::zero() }
    }

    pub fn rep(&self) -> &Poly<T> {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// Degree of the canonical representative, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.rep.degree()
    }

    /// Coefficients of `x^0 .. x^(d-1)`, possibly shorter than `d`.
    pub fn low(&self, d: usize) -> &[T] {
        let c = self.rep.coeffs();
        &c[..c.len().min(d)]
    }

    /// Coefficients `r_d, ..., r_k`; empty or ending in a nonzero entry.
    pub fn tail(&self, d: usize) -> &[T] {
        let c = self.rep.coeffs();
        &c[c.len().min(d)..]
    }
}

/// The basis `w_0 = p_d`, `w_k = X w_(k-1) + p_(d-k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrunotteBasis<T> {
    pub w: Vec<QuotElem<T>>,
}

/// `A = sum q_i w_i + sum r_i X^i` with every `r_i` a residue mod `p_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardRep<T> {
    pub q: Vec<T>,
    /// `r_0, ..., r_k`; empty or ending in a nonzero entry.
    pub residue: Vec<T>,
}

#[derive(Debug, Clone)]
pub struct QuotientRing<R: CoeffRing> {
    ring: R,
    modulus: Poly<R::Elem>,
    basis: BrunotteBasis<R::Elem>,
}

impl<R: CoeffRing> QuotientRing<R> {
    pub fn new(ring: R, modulus: Poly<R::Elem>) -> Result<Self> {
        let d = match modulus.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::InvalidModulus("degree must be at least 1".into())),
        };
        let p0 = modulus.coeff(&ring, 0);
        if ring.is_zero(&p0) {
            return Err(Error::InvalidModulus("constant coefficient p_0 is zero".into()));
        }
        if ring.is_unit(&p0) {
            return Err(Error::InvalidModulus(format!(
                "constant coefficient p_0 = {} is a unit",
                ring.format(&p0)
            )));
        }
        // w_k = sum_{i<=k} p_(d-i) x^(k-i), already canonical (degree < d)
        let c = modulus.coeffs();
        let w = (0..d)
            .map(|k| QuotElem {
                rep: Poly::new(&ring, (0..=k).map(|j| c[d - k + j].clone()).collect()),
            })
            .collect();
        Ok(QuotientRing {
            ring,
            modulus,
            basis: BrunotteBasis { w },
        })
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn modulus(&self) -> &Poly<R::Elem> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// `p_i`, zero beyond the degree.
    pub fn p(&self, i: usize) -> R::Elem {
        self.modulus.coeff(&self.ring, i)
    }

    pub fn p0(&self) -> &R::Elem {
        &self.modulus.coeffs()[0]
    }

    pub fn pd(&self) -> &R::Elem {
        self.modulus.leading().expect("nonzero modulus")
    }

    /// Canonical form of `f mod P`: top-down, split `b_i = r + q p_d` and
    /// subtract `q x^(i-d) P`.
    pub fn normalize(&self, f: &Poly<R::Elem>) -> QuotElem<R::Elem> {
        let ring = &self.ring;
        let d = self.degree();
        let p = self.modulus.coeffs();
        let pd = self.pd();
        let mut b = f.coeffs().to_vec();
        for i in (d..b.len()).rev() {
            let (r, q) = ring.divmod(&b[i], pd);
            if ring.is_zero(&q) {
                continue;
            }
            b[i] = r;
            let shift = i - d;
            for (j, pj) in p.iter().enumerate().take(d) {
                b[shift + j] = ring.sub(&b[shift + j], &ring.mul(&q, pj));
            }
        }
        QuotElem {
            rep: Poly::new(ring, b),
        }
    }

    pub fn constant(&self, c: R::Elem) -> QuotElem<R::Elem> {
        self.normalize(&Poly::constant(&self.ring, c))
    }

    pub fn zero(&self) -> QuotElem<R::Elem> {
        QuotElem::zero()
    }

    pub fn one(&self) -> QuotElem<R::Elem> {
        self.constant(self.ring.one())
    }

    /// The class `X` of `x`.
    pub fn x(&self) -> QuotElem<R::Elem> {
        self.normalize(&Poly::x(&self.ring))
    }

    /// `X^k`.
    pub fn x_pow(&self, k: usize) -> QuotElem<R::Elem> {
        self.normalize(&Poly::monomial(&self.ring, self.ring.one(), k))
    }

    pub fn add(&self, a: &QuotElem<R::Elem>, b: &QuotElem<R::Elem>) -> QuotElem<R::Elem> {
        self.normalize(&a.rep.add(&self.ring, &b.rep))
    }

    pub fn neg(&self, a: &QuotElem<R::Elem>) -> QuotElem<R::Elem> {
        self.normalize(&a.rep.neg(&self.ring))
    }

    pub fn sub(&self, a: &QuotElem<R::Elem>, b: &QuotElem<R::Elem>) -> QuotElem<R::Elem> {
        self.normalize(&a.rep.sub(&self.ring, &b.rep))
    }

    pub fn mul(&self, a: &QuotElem<R::Elem>, b: &QuotElem<R::Elem>) -> QuotElem<R::Elem> {
        self.normalize(&a.rep.mul(&self.ring, &b.rep))
    }

    pub fn scale(&self, a: &QuotElem<R::Elem>, c: &R::Elem) -> QuotElem<R::Elem> {
        self.normalize(&a.rep.scale(&self.ring, c))
    }

    pub fn mul_by_x(&self, a: &QuotElem<R::Elem>) -> QuotElem<R::Elem> {
        self.normalize(&a.rep.shift(&self.ring, 1))
    }

    /// The unique `B` with `X B = A`, computed as `(f - q P)/x` where
    /// `q = f(0)/p_0`.
    pub fn divide_by_x(&self, a: &QuotElem<R::Elem>) -> Result<QuotElem<R::Elem>> {
        let ring = &self.ring;
        let f0 = a.rep.coeff(ring, 0);
        let q = ring
            .exact_div(&f0, self.p0())?
            .ok_or_else(|| Error::NotDivisibleByX(ring.format(&f0)))?;
        let g = a.rep.sub(ring, &self.modulus.scale(ring, &q));
        debug_assert!(ring.is_zero(&g.coeff(ring, 0)));
        let shifted = Poly::new(ring, g.coeffs().iter().skip(1).cloned().collect());
        Ok(self.normalize(&shifted))
    }

    pub fn brunotte_basis(&self) -> &BrunotteBasis<R::Elem> {
        &self.basis
    }

    /// Reduces the low part against `w_(d-1), ..., w_0` in turn.
    pub fn standard_representation(&self, a: &QuotElem<R::Elem>) -> StandardRep<R::Elem> {
        let ring = &self.ring;
        let d = self.degree();
        let mut low: Vec<R::Elem> = (0..d).map(|i| a.rep.coeff(ring, i)).collect();
        let mut q = vec![ring.zero(); d];
        for j in (0..d).rev() {
            let (r, qj) = ring.divmod(&low[j], self.pd());
            let w = self.basis.w[j].rep.coeffs();
            for (i, wi) in w.iter().enumerate().take(j) {
                low[i] = ring.sub(&low[i], &ring.mul(&qj, wi));
            }
            low[j] = r;
            q[j] = qj;
        }
        let mut residue = low;
        residue.extend(a.tail(d).iter().cloned());
        StandardRep {
            q,
            residue: Poly::new(ring, residue).into_coeffs(),
        }
    }

    pub fn reconstruct(&self, rep: &StandardRep<R::Elem>) -> QuotElem<R::Elem> {
        let ring = &self.ring;
        let mut acc = Poly::new(ring, rep.residue.clone());
        for (qi, wi) in rep.q.iter().zip(&self.basis.w) {
            acc = acc.add(ring, &wi.rep.scale(ring, qi));
        }
        self.normalize(&acc)
    }

    /// `sum a_i w_i`.
    pub fn from_brunotte_coords(&self, a: &[R::Elem]) -> Result<QuotElem<R::Elem>> {
        if a.len() != self.degree() {
            return Err(Error::Dimension {
                expected: self.degree(),
                found: a.len(),
            });
        }
        Ok(self.reconstruct(&StandardRep {
            q: a.to_vec(),
            residue: Vec::new(),
        }))
    }

    /// Coordinates with respect to the Brunotte basis, for elements of the
    /// module it spans.
    pub fn brunotte_coords(&self, a: &QuotElem<R::Elem>) -> Option<Vec<R::Elem>> {
        let s = self.standard_representation(a);
        s.residue.is_empty().then_some(s.q)
    }

    /// Text form in `X`, e.g. `3*X - 2`.
    pub fn format(&self, a: &QuotElem<R::Elem>) -> String {
        a.rep.format(&self.ring, "X")
    }

    pub fn parse(&self, text: &str) -> Result<QuotElem<R::Elem>> {
        Ok(self.normalize(&parse::parse_poly(&self.ring, text)?))
    }
}
