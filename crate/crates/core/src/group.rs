//! Finite groups and their unitary duals.
//!
//! Elements are dense indices `0..order`; the Cayley table is the only
//! description of the group law. A dual is stored as one dense matrix per
//! element per irrep. Built-in families are correct by construction; groups
//! read from files go through [`Group::validate`].

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result, Violation};
use crate::linalg::CMatrix;
use crate::scalar::{cone, czero, root_of_unity, Real};

/// Group law as a Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a row-major Cayley table, checking closure,
    /// identity, inverses and associativity.
    pub fn from_cayley(order: usize, cayley: Vec<usize>, identity: usize) -> Result<Self> {
        let mut violations = Vec::new();
        if order == 0 {
            return Err(Error::InvalidArgument("group order must be positive".into()));
        }
        if cayley.len() != order * order {
            return Err(Error::DimensionMismatch { expected: order * order, found: cayley.len() });
        }
        if identity >= order {
            return Err(Error::InvalidArgument(format!("identity index {identity} out of range")));
        }
        if let Some(pos) = cayley.iter().position(|&z| z >= order) {
            violations.push(Violation {
                check: "closure",
                detail: format!("entry ({}, {}) = {} is not an element", pos / order, pos % order, cayley[pos]),
            });
            return Err(Error::InvariantViolation(violations));
        }
        let mul = |x: usize, y: usize| cayley[x * order + y];
        for x in 0..order {
            if mul(identity, x) != x || mul(x, identity) != x {
                violations.push(Violation { check: "identity", detail: format!("e·{x} or {x}·e differs from {x}") });
            }
        }
        let mut inverse = vec![usize::MAX; order];
        for x in 0..order {
            match (0..order).find(|&y| mul(x, y) == identity && mul(y, x) == identity) {
                Some(y) => inverse[x] = y,
                None => violations.push(Violation { check: "inverse", detail: format!("element {x} has no inverse") }),
            }
        }
        'assoc: for x in 0..order {
            for y in 0..order {
                let xy = mul(x, y);
                for z in 0..order {
                    if mul(xy, z) != mul(x, mul(y, z)) {
                        violations.push(Violation {
                            check: "associativity",
                            detail: format!("({x}·{y})·{z} != {x}·({y}·{z})"),
                        });
                        break 'assoc;
                    }
                }
            }
        }
        if !violations.is_empty() {
            return Err(Error::InvariantViolation(violations));
        }
        Ok(Self { order, cayley, identity, inverse })
    }

    /// Internal constructor for families whose tables are correct by construction.
    fn from_law(order: usize, identity: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut cayley = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                cayley.push(mul(x, y));
            }
        }
        let mut inverse = vec![0; order];
        for x in 0..order {
            inverse[x] = (0..order).find(|&y| cayley[x * order + y] == identity).expect("group law has inverses");
        }
        Self { order, cayley, identity, inverse }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cayley[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    /// `z y z⁻¹`
    #[inline]
    pub fn conjugate(&self, z: usize, y: usize) -> usize {
        self.mul(self.mul(z, y), self.inv(z))
    }

    pub fn cayley(&self) -> &[usize] {
        &self.cayley
    }
}

/// Irreducible unitary representation, one `dim×dim` matrix per element.
#[derive(Clone, Debug, PartialEq)]
pub struct Irrep<T> {
    dim: usize,
    mats: Vec<Complex<T>>,
}

impl<T: Real> Irrep<T> {
    /// `mats` holds `order` row-major blocks of size `dim×dim`.
    pub fn new(dim: usize, mats: Vec<Complex<T>>) -> Result<Self> {
        if dim == 0 || !mats.len().is_multiple_of(dim * dim) {
            return Err(Error::InvalidArgument(format!("irrep data of length {} does not fit dim {dim}", mats.len())));
        }
        Ok(Self { dim, mats })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major block of `η(x)`.
    #[inline]
    pub fn at(&self, x: usize) -> &[Complex<T>] {
        let s = self.dim * self.dim;
        &self.mats[x * s..(x + 1) * s]
    }

    pub fn matrix(&self, x: usize) -> CMatrix<T> {
        CMatrix::from_block(self.dim, self.at(x))
    }

    #[inline]
    pub fn entry(&self, x: usize, j: usize, k: usize) -> Complex<T> {
        self.at(x)[j * self.dim + k]
    }

    pub fn character(&self, x: usize) -> Complex<T> {
        let d = self.dim;
        let m = self.at(x);
        (0..d).fold(czero(), |acc, i| acc + m[i * d + i])
    }

    fn element_count(&self) -> usize {
        self.mats.len() / (self.dim * self.dim)
    }
}

/// Complete list of inequivalent irreps.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryDual<T> {
    irreps: Vec<Irrep<T>>,
    trivial_index: usize,
}

impl<T: Real> UnitaryDual<T> {
    pub fn new(irreps: Vec<Irrep<T>>, trivial_index: usize) -> Result<Self> {
        if trivial_index >= irreps.len() {
            return Err(Error::InvalidArgument("trivial index out of range".into()));
        }
        Ok(Self { irreps, trivial_index })
    }

    pub fn irreps(&self) -> &[Irrep<T>] {
        &self.irreps
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn trivial_index(&self) -> usize {
        self.trivial_index
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(Irrep::dim).collect()
    }
}

/// Which family a group was built from; cyclic-only kernels need to know.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(usize),
    Dihedral(usize),
    Product,
    Custom,
}

/// A finite group together with its unitary dual.
///
/// Tables on `G×Ĝ` and `Ĝ×G` store, for each group element, the blocks of
/// all irreps back to back. Since `Σ d_η² = |G|` each such row has exactly
/// `|G|` entries, and [`Group::offset`] locates the block of a given irrep.
#[derive(Clone, Debug)]
pub struct Group<T> {
    name: String,
    kind: GroupKind,
    table: FiniteGroup,
    dual: UnitaryDual<T>,
    offsets: Vec<usize>,
    dims: Vec<usize>,
}

impl<T: Real> Group<T> {
    /// Assembles a group without validation. Use [`Group::validated`] for
    /// untrusted input.
    pub fn from_parts(name: impl Into<String>, kind: GroupKind, table: FiniteGroup, dual: UnitaryDual<T>) -> Result<Self> {
        for (i, irrep) in dual.irreps.iter().enumerate() {
            if irrep.element_count() != table.order {
                return Err(Error::InvalidArgument(format!(
                    "irrep {i} has {} matrices for a group of order {}",
                    irrep.element_count(),
                    table.order
                )));
            }
        }
        let dims = dual.dims();
        let mut offsets = Vec::with_capacity(dims.len());
        let mut acc = 0;
        for d in &dims {
            offsets.push(acc);
            acc += d * d;
        }
        Ok(Self { name: name.into(), kind, table, dual, offsets, dims })
    }

    /// Assembles and validates; every violated invariant is reported.
    pub fn validated(name: impl Into<String>, kind: GroupKind, table: FiniteGroup, dual: UnitaryDual<T>) -> Result<Self> {
        let g = Self::from_parts(name, kind, table, dual)?;
        let v = g.validate();
        if v.is_empty() {
            Ok(g)
        } else {
            Err(Error::InvariantViolation(v))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    /// `Some(N)` for built-in cyclic groups with the character-exponent dual.
    pub fn cyclic_order(&self) -> Option<usize> {
        match self.kind {
            GroupKind::Cyclic(n) => Some(n),
            _ => None,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.table.order
    }

    pub fn table(&self) -> &FiniteGroup {
        &self.table
    }

    pub fn dual(&self) -> &UnitaryDual<T> {
        &self.dual
    }

    #[inline]
    pub fn irrep(&self, eta: usize) -> &Irrep<T> {
        &self.dual.irreps[eta]
    }

    #[inline]
    pub fn n_irreps(&self) -> usize {
        self.dims.len()
    }

    #[inline]
    pub fn dim(&self, eta: usize) -> usize {
        self.dims[eta]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Offset of irrep `eta`'s block inside a row of length `|G|`.
    #[inline]
    pub fn offset(&self, eta: usize) -> usize {
        self.offsets[eta]
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.table.identity
    }

    #[inline]
    pub fn trivial(&self) -> usize {
        self.dual.trivial_index
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table.mul(x, y)
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.table.inv(x)
    }

    #[inline]
    pub(crate) fn inv_order(&self) -> T {
        T::one() / T::from_usize_lossy(self.order())
    }

    /// True when both describe the same group law and dual block layout.
    pub fn compatible(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.table == other.table && self.dims == other.dims && self.dual == other.dual)
    }

    /// Checks every group and dual invariant with the precision's tolerances.
    pub fn validate(&self) -> Vec<Violation> {
        let alg = T::lit(T::ALGEBRA_TOL);
        let stat = T::lit(T::STATISTICAL_TOL);
        let n = self.order();
        let inv_n = self.inv_order();
        let mut out = Vec::new();
        let e = self.identity();

        for (i, irrep) in self.dual.irreps.iter().enumerate() {
            let d = irrep.dim;
            let id = CMatrix::<T>::identity(d);
            if irrep.matrix(e).sub(&id).max_abs() > alg {
                out.push(Violation { check: "identity-matrix", detail: format!("irrep {i}: η(e) != I") });
            }
            for x in 0..n {
                let defect = irrep.matrix(x).unitarity_defect();
                if defect > alg {
                    out.push(Violation {
                        check: "unitarity",
                        detail: format!("irrep {i}, element {x}: |ηη* - I| = {:e}", defect.as_f64()),
                    });
                }
            }
            'hom: for x in 0..n {
                let mx = irrep.matrix(x);
                for y in 0..n {
                    let lhs = irrep.matrix(self.mul(x, y));
                    if lhs.sub(&mx.matmul(&irrep.matrix(y))).max_abs() > alg {
                        out.push(Violation {
                            check: "homomorphism",
                            detail: format!("irrep {i}: η({x}·{y}) != η({x})η({y})"),
                        });
                        break 'hom;
                    }
                }
            }
            let norm: T = (0..n).map(|x| irrep.character(x).norm_sqr()).sum::<T>() * inv_n;
            if (norm - T::one()).abs() > stat {
                out.push(Violation {
                    check: "irreducibility",
                    detail: format!("irrep {i}: mean |χ|² = {}", norm.as_f64()),
                });
            }
        }

        let total: usize = self.dims.iter().map(|d| d * d).sum();
        if total != n {
            out.push(Violation { check: "completeness", detail: format!("Σ d² = {total}, |G| = {n}") });
        }

        for a in 0..self.n_irreps() {
            for b in (a + 1)..self.n_irreps() {
                let ip = self.character_inner(a, b);
                if ip.norm() > stat {
                    out.push(Violation {
                        check: "inequivalence",
                        detail: format!("irreps {a} and {b} have overlapping characters ({:e})", ip.norm().as_f64()),
                    });
                }
            }
        }

        let t = self.dual.trivial_index;
        let triv = &self.dual.irreps[t];
        if triv.dim != 1 || (0..n).any(|x| (triv.at(x)[0] - cone()).norm() > alg) {
            out.push(Violation { check: "trivial", detail: format!("irrep {t} is not the trivial representation") });
        }
        out
    }

    /// `(1/|G|) Σ_x χ_a(x) χ_b(x)*`
    pub fn character_inner(&self, a: usize, b: usize) -> Complex<T> {
        let (ia, ib) = (self.irrep(a), self.irrep(b));
        let s = (0..self.order()).fold(czero(), |acc, x| acc + ia.character(x) * ib.character(x).conj());
        s * self.inv_order()
    }

    /// Largest deviation from `(1/|G|) Σ_x η_jk(x) η_lm(x)* = δ_jl δ_km / d`.
    pub fn schur_defect(&self) -> T {
        let n = self.order();
        let inv_n = self.inv_order();
        let mut worst = T::zero();
        for irrep in &self.dual.irreps {
            let d = irrep.dim;
            let inv_d = T::one() / T::from_usize_lossy(d);
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        for m in 0..d {
                            let s = (0..n).fold(czero::<T>(), |acc, x| {
                                acc + irrep.entry(x, j, k) * irrep.entry(x, l, m).conj()
                            }) * inv_n;
                            let want = if j == l && k == m { inv_d } else { T::zero() };
                            worst = worst.max((s - Complex::new(want, T::zero())).norm());
                        }
                    }
                }
            }
        }
        worst
    }

    /// For each irrep, the index of the dual member whose character matches
    /// the contragredient `x ↦ η(x⁻¹)ᵀ`, or `None` if none does.
    pub fn contragredient_map(&self) -> Vec<Option<usize>> {
        let stat = T::lit(T::STATISTICAL_TOL);
        let n = self.order();
        (0..self.n_irreps())
            .map(|a| {
                let chi: Vec<Complex<T>> = (0..n).map(|x| self.irrep(a).character(self.inv(x))).collect();
                (0..self.n_irreps()).find(|&b| {
                    let ip = (0..n).fold(czero::<T>(), |acc, x| acc + chi[x] * self.irrep(b).character(x).conj())
                        * self.inv_order();
                    (ip - cone()).norm() <= stat
                })
            })
            .collect()
    }
}

impl<T: Real> fmt::Display for Group<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (|G| = {}, |Ĝ| = {})", self.name, self.order(), self.n_irreps())
    }
}

/// `ℤ/N` with characters `η_k(x) = e^{i2πkx/N}`, ordered by `k`.
pub fn build_cyclic<T: Real>(n: usize) -> Result<Arc<Group<T>>> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group order must be at least 1".into()));
    }
    let table = FiniteGroup::from_law(n, 0, |x, y| (x + y) % n);
    let irreps = (0..n)
        .map(|k| Irrep { dim: 1, mats: (0..n).map(|x| root_of_unity((k * x) as i64, n)).collect() })
        .collect();
    let dual = UnitaryDual { irreps, trivial_index: 0 };
    Ok(Arc::new(Group::from_parts(format!("Z/{n}"), GroupKind::Cyclic(n), table, dual)?))
}

/// Dihedral group of order `2n`.
///
/// Element `f·n + k` is `s^f r^k`. One-dimensional irreps come first
/// (trivial, then `(-1)^f`, then for even `n` the two parity characters),
/// followed by the two-dimensional `ρ_j`, `j = 1..⌈n/2⌉-1`, with
/// `ρ_j(r) = diag(ω^j, ω^{-j})` and `ρ_j(s)` the coordinate swap.
pub fn build_dihedral<T: Real>(n: usize) -> Result<Arc<Group<T>>> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("dihedral group needs n >= 3, got {n}")));
    }
    let order = 2 * n;
    let split = |x: usize| (x / n, x % n);
    // (s^f1 r^k1)(s^f2 r^k2) = s^{f1+f2} r^{(-1)^{f2} k1 + k2}
    let table = FiniteGroup::from_law(order, 0, |x, y| {
        let ((f1, k1), (f2, k2)) = (split(x), split(y));
        let k = if f2 == 0 { (k1 + k2) % n } else { (n - k1 + k2) % n };
        ((f1 + f2) % 2) * n + k
    });

    let one_dim = |sign: &dyn Fn(usize, usize) -> bool| Irrep {
        dim: 1,
        mats: (0..order)
            .map(|x| {
                let (f, k) = split(x);
                if sign(f, k) {
                    -cone::<T>()
                } else {
                    cone()
                }
            })
            .collect(),
    };
    let mut irreps = vec![one_dim(&|_, _| false), one_dim(&|f, _| f == 1)];
    if n.is_multiple_of(2) {
        irreps.push(one_dim(&|_, k| k % 2 == 1));
        irreps.push(one_dim(&|f, k| (f + k) % 2 == 1));
    }
    for j in 1..n.div_ceil(2) {
        let mut mats = Vec::with_capacity(order * 4);
        for x in 0..order {
            let (f, k) = split(x);
            let w = root_of_unity::<T>((j * k) as i64, n);
            let wc = w.conj();
            // S^f · diag(w, w̄)
            if f == 0 {
                mats.extend_from_slice(&[w, czero(), czero(), wc]);
            } else {
                mats.extend_from_slice(&[czero(), wc, w, czero()]);
            }
        }
        irreps.push(Irrep { dim: 2, mats });
    }
    let dual = UnitaryDual { irreps, trivial_index: 0 };
    Ok(Arc::new(Group::from_parts(format!("D{n}"), GroupKind::Dihedral(n), table, dual)?))
}

/// Direct product `A × B`; element `(a, b)` has index `a·|B| + b` and the
/// irreps are the Kronecker products `ξ ⊗ η`, `ξ` varying slowest.
pub fn build_product<T: Real>(a: &Group<T>, b: &Group<T>) -> Result<Arc<Group<T>>> {
    let (na, nb) = (a.order(), b.order());
    let order = na * nb;
    let table = FiniteGroup::from_law(order, a.identity() * nb + b.identity(), |x, y| {
        a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
    });
    let mut irreps = Vec::with_capacity(a.n_irreps() * b.n_irreps());
    for xi in a.dual.irreps() {
        for eta in b.dual.irreps() {
            let dim = xi.dim * eta.dim;
            let mut mats = Vec::with_capacity(order * dim * dim);
            for x in 0..order {
                let k = xi.matrix(x / nb).kron(&eta.matrix(x % nb));
                mats.extend_from_slice(k.as_slice());
            }
            irreps.push(Irrep { dim, mats });
        }
    }
    let trivial_index = a.trivial() * b.n_irreps() + b.trivial();
    let dual = UnitaryDual { irreps, trivial_index };
    Ok(Arc::new(Group::from_parts(format!("{}x{}", a.name, b.name), GroupKind::Product, table, dual)?))
}

/// Reads a group in the text table format (see [`parse_group_table`]).
pub fn load_group_file<T: Real>(path: impl AsRef<Path>) -> Result<Arc<Group<T>>> {
    let text = std::fs::read_to_string(path.as_ref())?;
    let name = path.as_ref().file_stem().and_then(|s| s.to_str()).unwrap_or("custom").to_string();
    parse_group_table(&text, &name)
}

/// Parses the group table format:
///
/// ```text
/// group <order>
/// identity <index>
/// <order lines of order indices>      # Cayley table, row x column y = xy
/// irreps <count>
/// dim <d>                             # per irrep, followed by order blocks
/// <d lines of d "re im" pairs>        # one block per element
/// ```
///
/// `#` starts a comment; blank lines are ignored. All invariants are
/// checked and every violation is reported.
pub fn parse_group_table<T: Real>(text: &str, name: &str) -> Result<Arc<Group<T>>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut last_line = 0;
    let mut next = |what: &str| -> Result<(usize, Vec<&str>)> {
        match lines.next() {
            Some((no, l)) => {
                last_line = no;
                Ok((no, l.split_whitespace().collect()))
            }
            None => Err(Error::Parse { line: last_line + 1, message: format!("unexpected end of file, expected {what}") }),
        }
    };
    let keyword = |(no, toks): (usize, Vec<&str>), kw: &str| -> Result<usize> {
        if toks.len() != 2 || toks[0] != kw {
            return Err(Error::Parse { line: no, message: format!("expected `{kw} <n>`") });
        }
        toks[1].parse::<usize>().map_err(|e| Error::Parse { line: no, message: format!("bad {kw} value: {e}") })
    };

    let order = keyword(next("group header")?, "group")?;
    if order == 0 {
        return Err(Error::Parse { line: 1, message: "group order must be positive".into() });
    }
    let identity = keyword(next("identity")?, "identity")?;
    let mut cayley = Vec::with_capacity(order * order);
    for _ in 0..order {
        let (no, toks) = next("Cayley row")?;
        if toks.len() != order {
            return Err(Error::Parse { line: no, message: format!("Cayley row has {} entries, expected {order}", toks.len()) });
        }
        for t in toks {
            cayley.push(t.parse::<usize>().map_err(|e| Error::Parse { line: no, message: format!("bad index `{t}`: {e}") })?);
        }
    }
    let count = keyword(next("irreps")?, "irreps")?;
    let mut irreps = Vec::with_capacity(count);
    for _ in 0..count {
        let dim = keyword(next("dim")?, "dim")?;
        if dim == 0 {
            return Err(Error::Parse { line: last_line, message: "irrep dimension must be positive".into() });
        }
        let mut mats = Vec::with_capacity(order * dim * dim);
        for _ in 0..order * dim {
            let (no, toks) = next("matrix row")?;
            if toks.len() != 2 * dim {
                return Err(Error::Parse { line: no, message: format!("matrix row needs {} numbers, found {}", 2 * dim, toks.len()) });
            }
            for pair in toks.chunks(2) {
                let re = parse_real::<T>(pair[0], no)?;
                let im = parse_real::<T>(pair[1], no)?;
                mats.push(Complex::new(re, im));
            }
        }
        irreps.push(Irrep { dim, mats });
    }
    if let Some((no, _)) = lines.next() {
        return Err(Error::Parse { line: no, message: "trailing content after last irrep".into() });
    }

    let table = FiniteGroup::from_cayley(order, cayley, identity)?;
    let trivial_index = irreps
        .iter()
        .position(|ir| ir.dim == 1 && (0..order).all(|x| (ir.at(x)[0] - cone()).norm() <= T::lit(T::ALGEBRA_TOL)))
        .ok_or_else(|| {
            Error::InvariantViolation(vec![Violation { check: "trivial", detail: "no trivial irrep in file".into() }])
        })?;
    let dual = UnitaryDual { irreps, trivial_index };
    Ok(Arc::new(Group::validated(name, GroupKind::Custom, table, dual)?))
}

fn parse_real<T: Real>(tok: &str, line: usize) -> Result<T> {
    tok.parse::<f64>()
        .map(T::lit)
        .map_err(|e| Error::Parse { line, message: format!("bad number `{tok}`: {e}") })
}

/// Serializes a group in the text table format accepted by [`parse_group_table`].
pub fn write_group_table<T: Real>(g: &Group<T>) -> String {
    let n = g.order();
    let mut s = format!("group {n}\nidentity {}\n", g.identity());
    for x in 0..n {
        let row: Vec<String> = (0..n).map(|y| g.mul(x, y).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s.push_str(&format!("irreps {}\n", g.n_irreps()));
    for irrep in g.dual.irreps() {
        let d = irrep.dim;
        s.push_str(&format!("dim {d}\n"));
        for x in 0..n {
            for r in 0..d {
                let row: Vec<String> = (0..d)
                    .map(|c| {
                        let z = irrep.entry(x, r, c);
                        format!("{:e} {:e}", z.re.as_f64(), z.im.as_f64())
                    })
                    .collect();
                s.push_str(&row.join(" "));
                s.push('\n');
            }
        }
    }
    s
}
