//! Finite unital rings stored as dense Cayley tables, plus the standard
//! constructions (products, matrix rings, truncated polynomials, trivial
//! extensions, quotients and corners).
//!
//! Element encodings are fixed so that witnesses are reproducible:
//!
//! * `Zn`: the residue itself.
//! * `product(A, B)`: `(a, b)` is `a * |B| + b`.
//! * `Un`, `Mn`, `trunc`, `T`: mixed radix over the base ring, first slot most
//!   significant. Matrix slots are taken row-major (upper triangle only for
//!   `Un`); truncated polynomials use `(a_0, ..., a_{n-1})`; the trivial
//!   extension uses `(r, m)`.
//! * quotients: cosets numbered in order of their smallest member.
//! * corners: members of `eR` in increasing parent order.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::radical::IdealSet;

/// Index of an element in a ring's carrier.
pub type Elem = u16;

/// Largest carrier an [`Elem`] can address.
pub const DEFAULT_SIZE_CAP: usize = 1 << 16;

static SIZE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_SIZE_CAP);

/// Current cap on the carrier size of constructed rings.
pub fn size_cap() -> usize {
    SIZE_CAP.load(Ordering::Relaxed)
}

/// Sets the process-wide size cap. Values are clamped to `2..=65536`.
///
/// Tables take `4 n^2` bytes, so the practical limit is memory, not the cap.
pub fn set_size_cap(cap: usize) {
    SIZE_CAP.store(cap.clamp(2, DEFAULT_SIZE_CAP), Ordering::Relaxed);
}

fn check_cap(what: &str, base: usize, exponent: usize) -> Result<usize> {
    let needed = (base as u128)
        .checked_pow(exponent as u32)
        .unwrap_or(u128::MAX);
    let cap = size_cap() as u128;
    if needed > cap {
        return Err(Error::Capacity {
            what: what.to_string(),
            needed,
            cap,
        });
    }
    Ok(needed as usize)
}

/// How a ring was built. Keeps the operands around for decoding elements and
/// lifting endomorphisms.
#[derive(Clone)]
pub enum Shape {
    Tables,
    Field4,
    Integers {
        modulus: usize,
    },
    Product {
        left: Arc<FiniteRing>,
        right: Arc<FiniteRing>,
    },
    UpperTriangular {
        base: Arc<FiniteRing>,
        n: usize,
    },
    FullMatrix {
        base: Arc<FiniteRing>,
        n: usize,
    },
    Truncated {
        base: Arc<FiniteRing>,
        n: usize,
    },
    TrivialExtension {
        base: Arc<FiniteRing>,
    },
    Quotient {
        parent: Arc<FiniteRing>,
        projection: Vec<Elem>,
        representatives: Vec<Elem>,
    },
    Corner {
        parent: Arc<FiniteRing>,
        idempotent: Elem,
        embedding: Vec<Elem>,
    },
}

impl Shape {
    /// Base ring and digit count for the mixed-radix shapes.
    pub fn digit_layout(&self) -> Option<(&Arc<FiniteRing>, usize)> {
        match self {
            Shape::UpperTriangular { base, n } => Some((base, n * (n + 1) / 2)),
            Shape::FullMatrix { base, n } => Some((base, n * n)),
            Shape::Truncated { base, n } => Some((base, *n)),
            Shape::TrivialExtension { base } => Some((base, 2)),
            _ => None,
        }
    }
}

/// A finite associative ring with identity.
pub struct FiniteRing {
    n: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    one: Elem,
    provenance: String,
    shape: Shape,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("provenance", &self.provenance)
            .field("size", &self.n)
            .finish()
    }
}

impl FiniteRing {
    fn assemble(
        n: usize,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        zero: Elem,
        one: Elem,
        provenance: String,
        shape: Shape,
    ) -> FiniteRing {
        let mut neg = vec![0; n];
        for a in 0..n {
            let row = &add[a * n..(a + 1) * n];
            neg[a] = row.iter().position(|&s| s == zero).unwrap_or(0) as Elem;
        }
        FiniteRing {
            n,
            add,
            mul,
            neg,
            zero,
            one,
            provenance,
            shape,
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Row `a` of the multiplication table.
    #[inline]
    pub fn mul_row(&self, a: Elem) -> &[Elem] {
        &self.mul[a as usize * self.n..(a as usize + 1) * self.n]
    }

    pub fn add_table(&self) -> &[Elem] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.n).map(|i| i as Elem)
    }

    /// True when both rings have identical tables (same encoding).
    pub fn same_tables(&self, other: &FiniteRing) -> bool {
        self.n == other.n && self.add == other.add && self.mul == other.mul
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        let mut acc = self.one;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Sum of `k` copies of `a`.
    pub fn times(&self, a: Elem, k: usize) -> Elem {
        let mut acc = self.zero;
        for _ in 0..k {
            acc = self.add(acc, a);
        }
        acc
    }

    /// Whether `a^k = 0` for some `k`.
    pub fn is_nilpotent(&self, a: Elem) -> bool {
        let mut p = a;
        for _ in 0..self.n {
            if p == self.zero {
                return true;
            }
            let next = self.mul(p, a);
            if next == p {
                return false;
            }
            p = next;
        }
        p == self.zero
    }

    pub fn additive_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut p = a;
        while p != self.zero {
            p = self.add(p, a);
            k += 1;
        }
        k
    }

    /// Mixed-radix digits of `e` for `Un`, `Mn`, `trunc` and `T` rings.
    pub fn digits(&self, e: Elem) -> Option<Vec<Elem>> {
        let (base, slots) = self.shape.digit_layout()?;
        Some(decode_digits(e as usize, base.size(), slots))
    }

    /// Inverse of [`FiniteRing::digits`].
    pub fn from_digits(&self, digits: &[Elem]) -> Option<Elem> {
        let (base, slots) = self.shape.digit_layout()?;
        if digits.len() != slots || digits.iter().any(|&d| d as usize >= base.size()) {
            return None;
        }
        Some(encode_digits(digits, base.size()) as Elem)
    }

    /// Components of an element of a product ring.
    pub fn split_pair(&self, e: Elem) -> Option<(Elem, Elem)> {
        match &self.shape {
            Shape::Product { right, .. } => {
                let m = right.size();
                Some(((e as usize / m) as Elem, (e as usize % m) as Elem))
            }
            _ => None,
        }
    }

    pub fn pair(&self, a: Elem, b: Elem) -> Option<Elem> {
        match &self.shape {
            Shape::Product { left, right } => {
                if (a as usize) < left.size() && (b as usize) < right.size() {
                    Some((a as usize * right.size() + b as usize) as Elem)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Full `n x n` entry grid of a matrix-ring element (zeros below the
    /// diagonal for upper triangular rings).
    pub fn matrix_entries(&self, e: Elem) -> Option<Vec<Vec<Elem>>> {
        let digits = self.digits(e)?;
        match &self.shape {
            Shape::UpperTriangular { base, n } => {
                let mut grid = vec![vec![base.zero(); *n]; *n];
                for (k, (i, j)) in upper_slots(*n).into_iter().enumerate() {
                    grid[i][j] = digits[k];
                }
                Some(grid)
            }
            Shape::FullMatrix { n, .. } => {
                Some(digits.chunks(*n).map(|row| row.to_vec()).collect())
            }
            _ => None,
        }
    }

    /// Element with the given entry grid; `None` if the grid does not fit.
    pub fn matrix_element(&self, grid: &[Vec<Elem>]) -> Option<Elem> {
        match &self.shape {
            Shape::UpperTriangular { base, n } => {
                if grid.len() != *n || grid.iter().any(|r| r.len() != *n) {
                    return None;
                }
                for i in 0..*n {
                    for j in 0..i {
                        if grid[i][j] != base.zero() {
                            return None;
                        }
                    }
                }
                let digits: Vec<Elem> = upper_slots(*n)
                    .into_iter()
                    .map(|(i, j)| grid[i][j])
                    .collect();
                self.from_digits(&digits)
            }
            Shape::FullMatrix { n, .. } => {
                if grid.len() != *n || grid.iter().any(|r| r.len() != *n) {
                    return None;
                }
                let digits: Vec<Elem> = grid.iter().flatten().copied().collect();
                self.from_digits(&digits)
            }
            _ => None,
        }
    }

    /// Matrix unit `e_{ij}` (1-based indices) of a matrix ring.
    pub fn matrix_unit(&self, i: usize, j: usize) -> Option<Elem> {
        let (base, n) = match &self.shape {
            Shape::UpperTriangular { base, n } | Shape::FullMatrix { base, n } => (base, *n),
            _ => return None,
        };
        if i == 0 || j == 0 || i > n || j > n {
            return None;
        }
        let mut grid = vec![vec![base.zero(); n]; n];
        grid[i - 1][j - 1] = base.one();
        self.matrix_element(&grid)
    }

    /// Human-readable rendering of an element.
    pub fn format_elem(&self, e: Elem) -> String {
        match &self.shape {
            Shape::Tables | Shape::Integers { .. } => e.to_string(),
            Shape::Field4 => ["0", "1", "w", "w+1"][e as usize & 3].to_string(),
            Shape::Product { left, right } => {
                let (a, b) = self.split_pair(e).unwrap_or((0, 0));
                format!("({},{})", left.format_elem(a), right.format_elem(b))
            }
            Shape::UpperTriangular { base, .. } | Shape::FullMatrix { base, .. } => {
                let grid = self.matrix_entries(e).unwrap_or_default();
                let rows: Vec<String> = grid
                    .iter()
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(|&x| base.format_elem(x)).collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
            Shape::Truncated { base, .. } | Shape::TrivialExtension { base } => {
                let cells: Vec<String> = self
                    .digits(e)
                    .unwrap_or_default()
                    .iter()
                    .map(|&x| base.format_elem(x))
                    .collect();
                format!("({})", cells.join(","))
            }
            Shape::Quotient {
                parent,
                representatives,
                ..
            } => format!("[{}]", parent.format_elem(representatives[e as usize])),
            Shape::Corner {
                parent, embedding, ..
            } => parent.format_elem(embedding[e as usize]),
        }
    }

    /// Exhaustive check of every ring axiom. Cost is cubic in the size.
    pub fn validate(&self) -> std::result::Result<(), ValidationReport> {
        let report = scan_axioms(self.n, &self.add, &self.mul);
        if report.violations.is_empty() {
            Ok(())
        } else {
            Err(report)
        }
    }
}

fn decode_digits(mut e: usize, base: usize, slots: usize) -> Vec<Elem> {
    let mut out = vec![0; slots];
    for k in (0..slots).rev() {
        out[k] = (e % base) as Elem;
        e /= base;
    }
    out
}

fn encode_digits(digits: &[Elem], base: usize) -> usize {
    digits
        .iter()
        .fold(0usize, |acc, &d| acc * base + d as usize)
}

/// Row-major positions `(i, j)` with `i <= j`.
pub(crate) fn upper_slots(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            out.push((i, j));
        }
    }
    out
}

/// Builds a ring whose elements are digit vectors over `base` with
/// digitwise addition and the given multiplication.
fn digit_ring<F>(
    base: &Arc<FiniteRing>,
    slots: usize,
    size: usize,
    one: &[Elem],
    product: F,
    provenance: String,
    shape: Shape,
) -> Arc<FiniteRing>
where
    F: Fn(&[Elem], &[Elem], &mut [Elem]),
{
    let b = base.size();
    let decoded: Vec<Elem> = (0..size).flat_map(|e| decode_digits(e, b, slots)).collect();
    let digits_of = |e: usize| &decoded[e * slots..(e + 1) * slots];
    let mut add = vec![0 as Elem; size * size];
    let mut mul = vec![0 as Elem; size * size];
    let mut buf = vec![0 as Elem; slots];
    for x in 0..size {
        let dx = digits_of(x);
        for y in 0..size {
            let dy = digits_of(y);
            for k in 0..slots {
                buf[k] = base.add(dx[k], dy[k]);
            }
            add[x * size + y] = encode_digits(&buf, b) as Elem;
            product(dx, dy, &mut buf);
            mul[x * size + y] = encode_digits(&buf, b) as Elem;
        }
    }
    let one = encode_digits(one, b) as Elem;
    Arc::new(FiniteRing::assemble(
        size, add, mul, 0, one, provenance, shape,
    ))
}

/// The integers modulo `n`.
pub fn build_zn(n: usize) -> Result<Arc<FiniteRing>> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("Zn needs n >= 2, got {n}")));
    }
    check_cap("Zn", n, 1)?;
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            add[a * n + b] = ((a + b) % n) as Elem;
            mul[a * n + b] = ((a * b) % n) as Elem;
        }
    }
    Ok(Arc::new(FiniteRing::assemble(
        n,
        add,
        mul,
        0,
        1,
        format!("Z{n}"),
        Shape::Integers { modulus: n },
    )))
}

/// The field with four elements `{0, 1, w, w+1}`, `w^2 = w + 1`.
pub fn build_gf4() -> Arc<FiniteRing> {
    // bit 0 is the constant term, bit 1 the coefficient of w
    let mul1 = |a: usize, b: usize| -> usize {
        let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
        let c0 = (a0 & b0) ^ (a1 & b1);
        let c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
        c0 | (c1 << 1)
    };
    let mut add = vec![0; 16];
    let mut mul = vec![0; 16];
    for a in 0..4 {
        for b in 0..4 {
            add[a * 4 + b] = (a ^ b) as Elem;
            mul[a * 4 + b] = mul1(a, b) as Elem;
        }
    }
    Arc::new(FiniteRing::assemble(
        4,
        add,
        mul,
        0,
        1,
        "GF4".into(),
        Shape::Field4,
    ))
}

/// Componentwise product `A x B`.
pub fn build_product(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> Result<Arc<FiniteRing>> {
    let n = a.size().saturating_mul(b.size());
    if n > size_cap() {
        return Err(Error::Capacity {
            what: "product".into(),
            needed: n as u128,
            cap: size_cap() as u128,
        });
    }
    let m = b.size();
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for x in 0..n {
        let (x1, x2) = ((x / m) as Elem, (x % m) as Elem);
        for y in 0..n {
            let (y1, y2) = ((y / m) as Elem, (y % m) as Elem);
            add[x * n + y] = (a.add(x1, y1) as usize * m + b.add(x2, y2) as usize) as Elem;
            mul[x * n + y] = (a.mul(x1, y1) as usize * m + b.mul(x2, y2) as usize) as Elem;
        }
    }
    let zero = (a.zero() as usize * m + b.zero() as usize) as Elem;
    let one = (a.one() as usize * m + b.one() as usize) as Elem;
    Ok(Arc::new(FiniteRing::assemble(
        n,
        add,
        mul,
        zero,
        one,
        format!("product({},{})", a.provenance(), b.provenance()),
        Shape::Product {
            left: a.clone(),
            right: b.clone(),
        },
    )))
}

/// Upper triangular `n x n` matrices over `base`.
pub fn build_upper_triangular(base: &Arc<FiniteRing>, n: usize) -> Result<Arc<FiniteRing>> {
    if n == 0 {
        return Err(Error::InvalidSize("matrix order must be at least 1".into()));
    }
    let slots = n * (n + 1) / 2;
    let size = check_cap("upper triangular ring", base.size(), slots)?;
    let pos = upper_slots(n);
    let mut index = vec![vec![usize::MAX; n]; n];
    for (k, &(i, j)) in pos.iter().enumerate() {
        index[i][j] = k;
    }
    let one: Vec<Elem> = pos
        .iter()
        .map(|&(i, j)| if i == j { base.one() } else { base.zero() })
        .collect();
    let r = base.clone();
    let product = move |x: &[Elem], y: &[Elem], out: &mut [Elem]| {
        for (k, &(i, j)) in pos.iter().enumerate() {
            let mut acc = r.zero();
            for t in i..=j {
                acc = r.add(acc, r.mul(x[index[i][t]], y[index[t][j]]));
            }
            out[k] = acc;
        }
    };
    Ok(digit_ring(
        base,
        slots,
        size,
        &one,
        product,
        format!("U{n}({})", base.provenance()),
        Shape::UpperTriangular {
            base: base.clone(),
            n,
        },
    ))
}

/// Full `n x n` matrices over `base`.
pub fn build_full_matrix(base: &Arc<FiniteRing>, n: usize) -> Result<Arc<FiniteRing>> {
    if n == 0 {
        return Err(Error::InvalidSize("matrix order must be at least 1".into()));
    }
    let size = check_cap("matrix ring", base.size(), n * n)?;
    let one: Vec<Elem> = (0..n * n)
        .map(|k| {
            if k / n == k % n {
                base.one()
            } else {
                base.zero()
            }
        })
        .collect();
    let r = base.clone();
    let product = move |x: &[Elem], y: &[Elem], out: &mut [Elem]| {
        for i in 0..n {
            for j in 0..n {
                let mut acc = r.zero();
                for t in 0..n {
                    acc = r.add(acc, r.mul(x[i * n + t], y[t * n + j]));
                }
                out[i * n + j] = acc;
            }
        }
    };
    Ok(digit_ring(
        base,
        n * n,
        size,
        &one,
        product,
        format!("M{n}({})", base.provenance()),
        Shape::FullMatrix {
            base: base.clone(),
            n,
        },
    ))
}

/// `base[x] / (x^n)` on coefficient tuples `(a_0, ..., a_{n-1})`.
pub fn build_truncated_poly(base: &Arc<FiniteRing>, n: usize) -> Result<Arc<FiniteRing>> {
    if n < 2 {
        return Err(Error::InvalidSize(format!(
            "truncation degree must be at least 2, got {n}"
        )));
    }
    let size = check_cap("truncated polynomial ring", base.size(), n)?;
    let mut one = vec![base.zero(); n];
    one[0] = base.one();
    let r = base.clone();
    let product = move |x: &[Elem], y: &[Elem], out: &mut [Elem]| {
        for k in 0..n {
            let mut acc = r.zero();
            for i in 0..=k {
                acc = r.add(acc, r.mul(x[i], y[k - i]));
            }
            out[k] = acc;
        }
    };
    Ok(digit_ring(
        base,
        n,
        size,
        &one,
        product,
        format!("trunc({},{n})", base.provenance()),
        Shape::Truncated {
            base: base.clone(),
            n,
        },
    ))
}

/// Trivial extension of `base` by itself: `(r1,m1)(r2,m2) = (r1 r2, r1 m2 + m1 r2)`.
pub fn build_trivial_extension(base: &Arc<FiniteRing>) -> Result<Arc<FiniteRing>> {
    let size = check_cap("trivial extension", base.size(), 2)?;
    let r = base.clone();
    let product = move |x: &[Elem], y: &[Elem], out: &mut [Elem]| {
        out[0] = r.mul(x[0], y[0]);
        out[1] = r.add(r.mul(x[0], y[1]), r.mul(x[1], y[0]));
    };
    Ok(digit_ring(
        base,
        2,
        size,
        &[base.one(), base.zero()],
        product,
        format!("T({})", base.provenance()),
        Shape::TrivialExtension { base: base.clone() },
    ))
}

/// Embedding of `trunc(R, n)` into `U_n(R)`: `a_k` fills the k-th superdiagonal.
///
/// Returns the image of every element of `trunc`.
pub fn truncated_matrix_embedding(trunc: &FiniteRing, un: &FiniteRing) -> Result<Vec<Elem>> {
    let (base, n) = match trunc.shape() {
        Shape::Truncated { base, n } => (base, *n),
        _ => {
            return Err(Error::ContextMismatch(format!(
                "{} is not a truncated polynomial ring",
                trunc.provenance()
            )))
        }
    };
    match un.shape() {
        Shape::UpperTriangular { base: b2, n: n2 } if *n2 == n && b2.same_tables(base) => {}
        _ => {
            return Err(Error::ContextMismatch(format!(
                "{} is not U{n}({})",
                un.provenance(),
                base.provenance()
            )))
        }
    }
    let mut image = Vec::with_capacity(trunc.size());
    for e in trunc.elements() {
        let coeffs = trunc.digits(e).expect("truncated ring has digits");
        let mut grid = vec![vec![base.zero(); n]; n];
        for (i, row) in grid.iter_mut().enumerate() {
            row[i..].copy_from_slice(&coeffs[..n - i]);
        }
        image.push(un.matrix_element(&grid).expect("grid is upper triangular"));
    }
    Ok(image)
}

/// Quotient `R / I`. Returns the ring and the projection `R -> R/I`.
pub fn build_quotient(
    ring: &Arc<FiniteRing>,
    ideal: &IdealSet,
) -> Result<(Arc<FiniteRing>, Vec<Elem>)> {
    if !Arc::ptr_eq(ideal.ring(), ring) && !ideal.ring().same_tables(ring) {
        return Err(Error::ContextMismatch(
            "ideal belongs to another ring".into(),
        ));
    }
    ideal.verify()?;
    let n = ring.size();
    let mut projection = vec![Elem::MAX; n];
    let mut reps: Vec<Elem> = Vec::new();
    let members: Vec<Elem> = ideal.elements().collect();
    for r in ring.elements() {
        if projection[r as usize] != Elem::MAX {
            continue;
        }
        let c = reps.len() as Elem;
        reps.push(r);
        for &i in &members {
            projection[ring.add(r, i) as usize] = c;
        }
    }
    let q = reps.len();
    let mut add = vec![0; q * q];
    let mut mul = vec![0; q * q];
    for x in 0..q {
        for y in 0..q {
            add[x * q + y] = projection[ring.add(reps[x], reps[y]) as usize];
            mul[x * q + y] = projection[ring.mul(reps[x], reps[y]) as usize];
        }
    }
    for a in ring.elements() {
        let pa = projection[a as usize] as usize;
        for b in ring.elements() {
            let pb = projection[b as usize] as usize;
            if projection[ring.mul(a, b) as usize] != mul[pa * q + pb] {
                return Err(Error::InvalidIdeal(format!(
                    "multiplication is not well defined on cosets at ({}, {})",
                    ring.format_elem(a),
                    ring.format_elem(b)
                )));
            }
        }
    }
    let label = if ideal.len() == 1 {
        "[0]".to_string()
    } else {
        let list: Vec<String> = members.iter().map(|e| e.to_string()).collect();
        format!("[{}]", list.join(","))
    };
    let provenance = format!(
        "quotient({},{})",
        ring.provenance(),
        ideal.label().unwrap_or(&label)
    );
    let zero = projection[ring.zero() as usize];
    let one = projection[ring.one() as usize];
    let quotient = FiniteRing::assemble(
        q,
        add,
        mul,
        zero,
        one,
        provenance,
        Shape::Quotient {
            parent: ring.clone(),
            projection: projection.clone(),
            representatives: reps,
        },
    );
    Ok((Arc::new(quotient), projection))
}

/// Corner ring `eR` for a central idempotent `e`, with identity `e`.
pub fn build_corner(ring: &Arc<FiniteRing>, e: Elem) -> Result<Arc<FiniteRing>> {
    if e as usize >= ring.size() {
        return Err(Error::InvalidIdempotent(format!("{e} is not an element")));
    }
    if ring.mul(e, e) != e {
        return Err(Error::InvalidIdempotent(format!(
            "{} is not idempotent",
            ring.format_elem(e)
        )));
    }
    if let Some(r) = ring.elements().find(|&r| ring.mul(e, r) != ring.mul(r, e)) {
        return Err(Error::InvalidIdempotent(format!(
            "{} does not commute with {}",
            ring.format_elem(e),
            ring.format_elem(r)
        )));
    }
    let mut embedding: Vec<Elem> = ring.elements().map(|r| ring.mul(e, r)).collect();
    embedding.sort_unstable();
    embedding.dedup();
    let mut index = vec![Elem::MAX; ring.size()];
    for (k, &x) in embedding.iter().enumerate() {
        index[x as usize] = k as Elem;
    }
    let m = embedding.len();
    let mut add = vec![0; m * m];
    let mut mul = vec![0; m * m];
    for x in 0..m {
        for y in 0..m {
            add[x * m + y] = index[ring.add(embedding[x], embedding[y]) as usize];
            mul[x * m + y] = index[ring.mul(embedding[x], embedding[y]) as usize];
        }
    }
    let zero = index[ring.zero() as usize];
    let one = index[e as usize];
    Ok(Arc::new(FiniteRing::assemble(
        m,
        add,
        mul,
        zero,
        one,
        format!("corner({},{e})", ring.provenance()),
        Shape::Corner {
            parent: ring.clone(),
            idempotent: e,
            embedding,
        },
    )))
}

/// Validates user-supplied tables and infers zero and one.
pub fn build_from_tables(
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    provenance: &str,
) -> Result<Arc<FiniteRing>> {
    let n = add.len();
    if n < 2 {
        return Err(Error::InvalidSize(format!(
            "a ring needs at least 2 elements, table has {n} rows"
        )));
    }
    if n > size_cap() {
        return Err(Error::Capacity {
            what: "table ring".into(),
            needed: n as u128,
            cap: size_cap() as u128,
        });
    }
    if mul.len() != n {
        return Err(Error::InvalidSize(format!(
            "add has {n} rows but mul has {}",
            mul.len()
        )));
    }
    for (name, table) in [("add", &add), ("mul", &mul)] {
        if let Some((i, row)) = table.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::InvalidSize(format!(
                "{name} row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
    }
    let mut report = ValidationReport::default();
    for (axiom, table) in [
        (Axiom::AdditiveClosure, &add),
        (Axiom::MultiplicativeClosure, &mul),
    ] {
        'rows: for (a, row) in table.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    report.violations.push(AxiomViolation {
                        axiom,
                        witness: vec![a as Elem, b as Elem],
                    });
                    break 'rows;
                }
            }
        }
    }
    if !report.violations.is_empty() {
        return Err(Error::Validation(report));
    }
    let add: Vec<Elem> = add.into_iter().flatten().map(|v| v as Elem).collect();
    let mul: Vec<Elem> = mul.into_iter().flatten().map(|v| v as Elem).collect();
    let report = scan_axioms(n, &add, &mul);
    if !report.violations.is_empty() {
        return Err(Error::Validation(report));
    }
    let zero = find_identity(n, &add).expect("validated");
    let one = find_identity(n, &mul).expect("validated");
    Ok(Arc::new(FiniteRing::assemble(
        n,
        add,
        mul,
        zero,
        one,
        provenance.to_string(),
        Shape::Tables,
    )))
}

fn find_identity(n: usize, table: &[Elem]) -> Option<Elem> {
    (0..n)
        .find(|&e| (0..n).all(|a| table[e * n + a] as usize == a && table[a * n + e] as usize == a))
        .map(|e| e as Elem)
}

/// A ring axiom checked by [`FiniteRing::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    AdditiveClosure,
    MultiplicativeClosure,
    AdditiveAssociativity,
    AdditiveCommutativity,
    AdditiveIdentity,
    AdditiveInverse,
    MultiplicativeAssociativity,
    LeftDistributivity,
    RightDistributivity,
    MultiplicativeIdentity,
    Nontrivial,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::AdditiveClosure => "addition table entry out of range",
            Axiom::MultiplicativeClosure => "multiplication table entry out of range",
            Axiom::AdditiveAssociativity => "addition is not associative",
            Axiom::AdditiveCommutativity => "addition is not commutative",
            Axiom::AdditiveIdentity => "no additive identity",
            Axiom::AdditiveInverse => "element without additive inverse",
            Axiom::MultiplicativeAssociativity => "multiplication is not associative",
            Axiom::LeftDistributivity => "left distributivity fails: a(b+c) != ab+ac",
            Axiom::RightDistributivity => "right distributivity fails: (a+b)c != ac+bc",
            Axiom::MultiplicativeIdentity => "no multiplicative identity",
            Axiom::Nontrivial => "zero equals one",
        };
        f.write_str(s)
    }
}

/// First failing tuple for one axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<Elem>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<AxiomViolation>,
}

impl ValidationReport {
    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            let w: Vec<String> = v.witness.iter().map(|e| e.to_string()).collect();
            if w.is_empty() {
                writeln!(f, "  {}", v.axiom)?;
            } else {
                writeln!(f, "  {} at ({})", v.axiom, w.join(", "))?;
            }
        }
        Ok(())
    }
}

fn scan_axioms(n: usize, add: &[Elem], mul: &[Elem]) -> ValidationReport {
    let at = |t: &[Elem], a: usize, b: usize| t[a * n + b] as usize;
    let mut report = ValidationReport::default();
    let first = |axiom: Axiom, witness: &[usize], report: &mut ValidationReport| {
        if !report.has(axiom) {
            report.violations.push(AxiomViolation {
                axiom,
                witness: witness.iter().map(|&x| x as Elem).collect(),
            });
        }
    };

    'comm: for a in 0..n {
        for b in 0..n {
            if at(add, a, b) != at(add, b, a) {
                first(Axiom::AdditiveCommutativity, &[a, b], &mut report);
                break 'comm;
            }
        }
    }
    let zero = find_identity(n, add);
    match zero {
        None => first(Axiom::AdditiveIdentity, &[], &mut report),
        Some(z) => {
            if let Some(a) = (0..n).find(|&a| !(0..n).any(|b| at(add, a, b) == z as usize)) {
                first(Axiom::AdditiveInverse, &[a], &mut report);
            }
        }
    }
    let one = find_identity(n, mul);
    match one {
        None => first(Axiom::MultiplicativeIdentity, &[], &mut report),
        Some(o) if Some(o) == zero => first(Axiom::Nontrivial, &[], &mut report),
        _ => {}
    }

    let triple_axioms = [
        Axiom::AdditiveAssociativity,
        Axiom::MultiplicativeAssociativity,
        Axiom::LeftDistributivity,
        Axiom::RightDistributivity,
    ];
    'outer: for a in 0..n {
        for b in 0..n {
            let ab_add = at(add, a, b);
            let ab_mul = at(mul, a, b);
            for c in 0..n {
                if at(add, ab_add, c) != at(add, a, at(add, b, c)) {
                    first(Axiom::AdditiveAssociativity, &[a, b, c], &mut report);
                }
                if at(mul, ab_mul, c) != at(mul, a, at(mul, b, c)) {
                    first(Axiom::MultiplicativeAssociativity, &[a, b, c], &mut report);
                }
                if at(mul, a, at(add, b, c)) != at(add, ab_mul, at(mul, a, c)) {
                    first(Axiom::LeftDistributivity, &[a, b, c], &mut report);
                }
                if at(mul, ab_add, c) != at(add, at(mul, a, c), at(mul, b, c)) {
                    first(Axiom::RightDistributivity, &[a, b, c], &mut report);
                }
            }
            if triple_axioms.iter().all(|&x| report.has(x)) {
                break 'outer;
            }
        }
    }
    report
}

/// All idempotents `e = e^2`, in carrier order.
pub fn idempotents(ring: &FiniteRing) -> Vec<Elem> {
    ring.elements().filter(|&e| ring.mul(e, e) == e).collect()
}

/// Whether `e` commutes with every element.
pub fn is_central(ring: &FiniteRing, e: Elem) -> bool {
    ring.elements().all(|r| ring.mul(e, r) == ring.mul(r, e))
}

/// Every idempotent is central.
pub fn is_abelian(ring: &FiniteRing) -> bool {
    idempotents(ring).into_iter().all(|e| is_central(ring, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteRing> {
        build_zn(n).unwrap()
    }

    #[test]
    fn zn_arithmetic() {
        let r = z(4);
        assert_eq!(r.add(2, 3), 1);
        assert_eq!(r.mul(2, 2), 0);
        assert_eq!(r.one(), 1);
        assert_eq!(z(2).add(1, 1), 0);
        assert_eq!(z(6).mul(2, 3), 0);
        assert!(build_zn(1).is_err());
        assert_eq!(r.provenance(), "Z4");
    }

    #[test]
    fn product_encoding() {
        let p = build_product(&z(2), &z(2)).unwrap();
        let (e10, e01) = (p.pair(1, 0).unwrap(), p.pair(0, 1).unwrap());
        assert_eq!(p.mul(e10, e01), p.zero());
        assert_eq!(p.add(e10, e01), p.one());
        assert_eq!(build_product(&z(2), &z(3)).unwrap().size(), 6);
        let q = build_product(&z(3), &z(5)).unwrap();
        for a in 0..3 {
            for b in 0..5 {
                assert_eq!(q.split_pair(q.pair(a, b).unwrap()), Some((a, b)));
            }
        }
    }

    #[test]
    fn upper_triangular_units() {
        let u = build_upper_triangular(&z(2), 2).unwrap();
        assert_eq!(u.size(), 8);
        let (e11, e12, e22) = (
            u.matrix_unit(1, 1).unwrap(),
            u.matrix_unit(1, 2).unwrap(),
            u.matrix_unit(2, 2).unwrap(),
        );
        assert_eq!((e11, e12, e22), (4, 2, 1));
        assert_eq!(u.mul(e11, e12), e12);
        assert_eq!(u.mul(e12, e11), 0);
        assert_eq!(u.one(), u.add(e11, e22));
        assert_eq!(build_upper_triangular(&z(2), 3).unwrap().size(), 64);
    }

    #[test]
    fn full_matrix_units() {
        let m = build_full_matrix(&z(2), 2).unwrap();
        assert_eq!(m.size(), 16);
        let e = |i, j| m.matrix_unit(i, j).unwrap();
        assert_eq!(m.mul(e(1, 2), e(2, 1)), e(1, 1));
        assert_eq!(m.mul(e(2, 1), e(1, 2)), e(2, 2));
        assert_eq!(m.mul(e(1, 1), e(2, 2)), 0);
        assert_eq!(m.format_elem(m.add(e(1, 1), e(1, 2))), "[[1,1],[0,0]]");
    }

    #[test]
    fn truncated_products() {
        let t = build_truncated_poly(&z(2), 2).unwrap();
        let x = t.from_digits(&[0, 1]).unwrap();
        assert_eq!(t.mul(x, x), 0);
        let t = build_truncated_poly(&z(4), 3).unwrap();
        let x = t.from_digits(&[0, 1, 0]).unwrap();
        let x2 = t.from_digits(&[0, 0, 1]).unwrap();
        assert_eq!(t.mul(x, x), x2);
        assert_eq!(t.mul(x2, x), 0);
    }

    #[test]
    fn trivial_extension_law() {
        let t = build_trivial_extension(&z(4)).unwrap();
        let p = |r, m| t.from_digits(&[r, m]).unwrap();
        assert_eq!(t.mul(p(2, 1), p(2, 3)), p(0, 0));
        for m1 in 0..4 {
            for m2 in 0..4 {
                assert_eq!(t.mul(p(0, m1), p(0, m2)), 0);
            }
        }
        assert_eq!(t.one(), p(1, 0));
    }

    #[test]
    fn corners() {
        let p = build_product(&z(2), &z(2)).unwrap();
        let c = build_corner(&p, p.pair(1, 0).unwrap()).unwrap();
        assert_eq!(c.size(), 2);
        let full = build_corner(&p, p.one()).unwrap();
        assert!(full.same_tables(&p));
        let c = build_corner(&z(6), 3).unwrap();
        assert_eq!(c.size(), 2);
        assert!(matches!(c.shape(), Shape::Corner { embedding, .. } if embedding == &vec![0, 3]));
        assert!(build_corner(&z(6), 2).is_err());
        let u = build_upper_triangular(&z(2), 2).unwrap();
        assert!(matches!(
            build_corner(&u, 4),
            Err(Error::InvalidIdempotent(_))
        ));
    }

    #[test]
    fn idempotent_scan() {
        let p = build_product(&z(2), &z(2)).unwrap();
        assert_eq!(idempotents(&p), vec![0, 1, 2, 3]);
        assert!(is_abelian(&p));
        assert!(!is_abelian(&build_upper_triangular(&z(2), 2).unwrap()));
        assert_eq!(idempotents(&z(4)), vec![0, 1]);
    }

    #[test]
    fn tables_round_trip() {
        let r = z(4);
        let rows = |t: &[Elem]| {
            t.chunks(4)
                .map(|c| c.iter().map(|&v| v as usize).collect())
                .collect::<Vec<Vec<usize>>>()
        };
        let ok = build_from_tables(rows(r.add_table()), rows(r.mul_table()), "tables").unwrap();
        assert!(ok.same_tables(&r));
        let mut bad = rows(r.mul_table());
        bad[2][2] = 1;
        match build_from_tables(rows(r.add_table()), bad, "tables") {
            Err(Error::Validation(rep)) => {
                assert!(rep.has(Axiom::LeftDistributivity) || rep.has(Axiom::RightDistributivity))
            }
            other => panic!("expected validation failure, got {other:?}"),
        }
    }

    #[test]
    fn gf4_is_a_field() {
        let f = build_gf4();
        assert!(f.validate().is_ok());
        for a in 1..4 {
            assert!((1..4).any(|b| f.mul(a, b) == 1));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let r = z(16);
        assert!(matches!(
            build_full_matrix(&r, 3),
            Err(Error::Capacity { .. })
        ));
    }
}
