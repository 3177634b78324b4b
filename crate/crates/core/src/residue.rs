//! Residue vectors, pair states and the two generating moves.
//!
//! A pair state `(g, k)` over `G = Z_{d_1} x ... x Z_{d_n}` is viewed as an
//! `n x 2` matrix whose row `i` is `(g_i, k_i)`. The special linear group acts
//! on the right, by column operations:
//!
//! ```text
//! [g | k] * [[a, b], [c, d]] = [a*g + c*k | b*g + d*k]
//! ```
//!
//! With this convention `S = [[0,-1],[1,0]]` sends `(g, k)` to `(k, -g)` and
//! `T = [[1,1],[0,1]]` sends `(g, k)` to `(g, k + g)`.
//!
//! States are totally ordered by their mixed-radix index: the digits
//! `g_0, ..., g_{n-1}, k_0, ..., k_{n-1}` read most significant first. For
//! `Z_2^n` this is the bit-packed integer `g << n | k`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Trial-division primality test. Inputs in this crate are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut f = 3u64;
    while f.saturating_mul(f) <= n {
        if n.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

#[inline]
fn mul_mod(x: u64, y: u64, m: u64) -> u64 {
    ((x as u128 * y as u128) % m as u128) as u64
}

#[inline]
fn add_mod(x: u64, y: u64, m: u64) -> u64 {
    ((x as u128 + y as u128) % m as u128) as u64
}

#[inline]
fn neg_mod(x: u64, m: u64) -> u64 {
    if x == 0 {
        0
    } else {
        m - x
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The finite abelian group `Z_{d_1} x ... x Z_{d_n}` that pair entries live in.
///
/// `n = 0` is the trivial group; its pair space has exactly one state.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupSpec {
    moduli: Arc<[u64]>,
}

impl GroupSpec {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = moduli.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidModulus(bad));
        }
        Ok(GroupSpec {
            moduli: moduli.into(),
        })
    }

    /// `Z_d^n`. The modulus need not be prime.
    pub fn uniform(d: u64, n: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidModulus(d));
        }
        Self::new(vec![d; n])
    }

    /// `Z_p^n` with `p` checked for primality.
    pub fn uniform_prime(p: u64, n: usize) -> Result<Self> {
        require_prime(p)?;
        Self::uniform(p, n)
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of cyclic factors.
    pub fn n(&self) -> usize {
        self.moduli.len()
    }

    /// The common modulus if every factor is the same.
    ///
    /// The trivial group reports `None`; callers that know the intended prime
    /// should carry it separately (see [`GroupSpec::prime_for`]).
    pub fn common_modulus(&self) -> Option<u64> {
        let first = *self.moduli.first()?;
        self.moduli.iter().all(|&d| d == first).then_some(first)
    }

    /// True when all moduli equal one prime `p` (and `n >= 1`).
    pub fn is_uniform_prime(&self) -> bool {
        self.common_modulus().is_some_and(is_prime)
    }

    /// Checks that this spec can be treated as `Z_p^n` for the given prime.
    /// The trivial group is `Z_p^0` for every prime.
    pub fn prime_for(&self, p: u64) -> Result<u64> {
        require_prime(p)?;
        if self.moduli.iter().all(|&d| d == p) {
            Ok(p)
        } else {
            Err(Error::NotUniformPrime(self.moduli.to_vec()))
        }
    }

    /// `|G| = d_1 * ... * d_n`.
    pub fn order(&self) -> BigUint {
        self.moduli
            .iter()
            .fold(BigUint::one(), |acc, &d| acc * BigUint::from(d))
    }

    /// `|G x G|`.
    pub fn state_count(&self) -> BigUint {
        let o = self.order();
        &o * &o
    }

    /// Least common multiple of the moduli, the order of the `T` move.
    pub fn exponent(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.moduli.iter().fold(1, |l, &d| l / gcd(l, d) * d)
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec{:?}", &*self.moduli)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "0");
        }
        match self.common_modulus() {
            Some(d) => write!(f, "Z_{}^{}", d, self.n()),
            None => {
                let parts: Vec<String> = self.moduli.iter().map(|d| format!("Z_{d}")).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

/// An element of `G`, entry `i` reduced modulo `d_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidueVector {
    entries: Vec<u64>,
}

impl ResidueVector {
    pub fn new(spec: &GroupSpec, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != spec.n() {
            return Err(Error::SpecMismatch(format!(
                "vector of length {} for a group with {} factors",
                entries.len(),
                spec.n()
            )));
        }
        let entries = entries
            .into_iter()
            .zip(spec.moduli())
            .map(|(x, &d)| x % d)
            .collect();
        Ok(ResidueVector { entries })
    }

    pub fn zero(spec: &GroupSpec) -> Self {
        ResidueVector {
            entries: vec![0; spec.n()],
        }
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }
}

/// A pair `(g, k)` in `G x G`, equivalently an `n x 2` residue matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairState {
    // field order matters: the derived Ord is the index order within one spec
    g: ResidueVector,
    k: ResidueVector,
    spec: GroupSpec,
}

impl PairState {
    pub fn new(spec: &GroupSpec, g: Vec<u64>, k: Vec<u64>) -> Result<Self> {
        Ok(PairState {
            g: ResidueVector::new(spec, g)?,
            k: ResidueVector::new(spec, k)?,
            spec: spec.clone(),
        })
    }

    /// Builds a state from its matrix rows `(g_i, k_i)`.
    pub fn from_rows(spec: &GroupSpec, rows: &[(u64, u64)]) -> Result<Self> {
        let (g, k) = rows.iter().copied().unzip();
        Self::new(spec, g, k)
    }

    pub fn zero(spec: &GroupSpec) -> Self {
        PairState {
            g: ResidueVector::zero(spec),
            k: ResidueVector::zero(spec),
            spec: spec.clone(),
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn g(&self) -> &ResidueVector {
        &self.g
    }

    pub fn k(&self) -> &ResidueVector {
        &self.k
    }

    pub fn rows(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.g
            .entries
            .iter()
            .copied()
            .zip(self.k.entries.iter().copied())
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero() && self.k.is_zero()
    }
}

/// Renders rows as digit strings joined by `/`, e.g. `00/01`. Entries are
/// separated by `:` when some modulus exceeds 10. The trivial state is `-`.
impl fmt::Display for PairState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = render_rows(self);
        if rows.is_empty() {
            write!(f, "-")
        } else {
            write!(f, "{}", rows.join("/"))
        }
    }
}

/// Row-wise rendering, one string per matrix row.
pub fn render_rows(s: &PairState) -> Vec<String> {
    let wide = s.spec.moduli().iter().any(|&d| d > 10);
    s.rows()
        .map(|(g, k)| {
            if wide {
                format!("{g}:{k}")
            } else {
                format!("{g}{k}")
            }
        })
        .collect()
}

/// The `S` move: `(g, k) -> (k, -g)`.
pub fn apply_s(s: &PairState) -> PairState {
    let neg_g =
        s.g.entries
            .iter()
            .zip(s.spec.moduli())
            .map(|(&x, &d)| neg_mod(x, d))
            .collect();
    PairState {
        g: s.k.clone(),
        k: ResidueVector { entries: neg_g },
        spec: s.spec.clone(),
    }
}

/// The `T` move: `(g, k) -> (g, k + g)`.
pub fn apply_t(s: &PairState) -> PairState {
    let k =
        s.k.entries
            .iter()
            .zip(&s.g.entries)
            .zip(s.spec.moduli())
            .map(|((&k, &g), &d)| add_mod(k, g, d))
            .collect();
    PairState {
        g: s.g.clone(),
        k: ResidueVector { entries: k },
        spec: s.spec.clone(),
    }
}

/// An element of `SL(2, Z_p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat2 {
    p: u64,
    a: u64,
    b: u64,
    c: u64,
    d: u64,
}

impl Mat2 {
    /// `[[a, b], [c, d]]` over `Z_p`; entries are reduced, the determinant must be 1.
    pub fn new(p: u64, a: u64, b: u64, c: u64, d: u64) -> Result<Self> {
        require_prime(p)?;
        let (a, b, c, d) = (a % p, b % p, c % p, d % p);
        let det = (mul_mod(a, d, p) + p - mul_mod(b, c, p)) % p;
        if det != 1 % p {
            return Err(Error::NotSpecialLinear { p, a, b, c, d, det });
        }
        Ok(Mat2 { p, a, b, c, d })
    }

    /// Builds from signed entries, reducing into `[0, p)`.
    pub fn from_signed(p: u64, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        require_prime(p)?;
        let r = |x: i64| x.rem_euclid(p as i64) as u64;
        Self::new(p, r(a), r(b), r(c), r(d))
    }

    pub fn identity(p: u64) -> Result<Self> {
        Self::new(p, 1, 0, 0, 1)
    }

    /// `[[0, -1], [1, 0]]`, realizes [`apply_s`].
    pub fn s(p: u64) -> Result<Self> {
        Self::from_signed(p, 0, -1, 1, 0)
    }

    /// `[[1, 1], [0, 1]]`, realizes [`apply_t`].
    pub fn t(p: u64) -> Result<Self> {
        Self::new(p, 1, 1, 0, 1)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn entries(&self) -> [u64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_identity(&self) -> bool {
        self.a == 1 % self.p && self.b == 0 && self.c == 0 && self.d == 1 % self.p
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Mat2) -> Result<Mat2> {
        if self.p != rhs.p {
            return Err(Error::SpecMismatch(format!(
                "matrices over Z_{} and Z_{}",
                self.p, rhs.p
            )));
        }
        let p = self.p;
        let dot = |x: u64, y: u64, z: u64, w: u64| add_mod(mul_mod(x, y, p), mul_mod(z, w, p), p);
        Ok(Mat2 {
            p,
            a: dot(self.a, rhs.a, self.b, rhs.c),
            b: dot(self.a, rhs.b, self.b, rhs.d),
            c: dot(self.c, rhs.a, self.d, rhs.c),
            d: dot(self.c, rhs.b, self.d, rhs.d),
        })
    }

    /// Dimension of the space of row vectors `r` with `r * self = r`.
    pub fn fixed_row_dim(&self) -> u32 {
        let p = self.p;
        let a = add_mod(self.a, p - 1, p);
        let d = add_mod(self.d, p - 1, p);
        let (b, c) = (self.b, self.c);
        if a == 0 && b == 0 && c == 0 && d == 0 {
            2
        } else if (mul_mod(a, d, p) + p - mul_mod(b, c, p)).is_multiple_of(p) {
            1
        } else {
            0
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Right action of `A` on the `n x 2` matrix `[g | k]`.
pub fn apply_mat(s: &PairState, m: &Mat2) -> Result<PairState> {
    s.spec.prime_for(m.p).map_err(|_| {
        Error::SpecMismatch(format!(
            "matrix over Z_{} applied to a state over {}",
            m.p, s.spec
        ))
    })?;
    let p = m.p;
    let (g, k): (Vec<u64>, Vec<u64>) = s
        .rows()
        .map(|(g, k)| {
            (
                add_mod(mul_mod(m.a, g, p), mul_mod(m.c, k, p), p),
                add_mod(mul_mod(m.b, g, p), mul_mod(m.d, k, p), p),
            )
        })
        .unzip();
    Ok(PairState {
        g: ResidueVector { entries: g },
        k: ResidueVector { entries: k },
        spec: s.spec.clone(),
    })
}

/// All of `SL(2, Z_p)`, sorted by `(a, b, c, d)`. Has `p(p^2 - 1)` elements.
pub fn enumerate_sl2(p: u64) -> Result<Vec<Mat2>> {
    require_prime(p)?;
    let mut out = Vec::with_capacity((p * (p * p - 1)) as usize);
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                if a == 0 {
                    // need -bc = 1, any d
                    if (mul_mod(b, c, p) + 1).is_multiple_of(p) {
                        out.extend((0..p).map(|d| Mat2 { p, a, b, c, d }));
                    }
                } else {
                    let inv = pow_mod(a, p - 2, p);
                    let d = mul_mod(add_mod(1, mul_mod(b, c, p), p), inv, p);
                    out.push(Mat2 { p, a, b, c, d });
                }
            }
        }
    }
    Ok(out)
}

/// `|SL(2, Z_p)| = p(p^2 - 1)`.
pub fn sl2_order(p: u64) -> BigUint {
    let p = BigUint::from(p);
    &p * (&p * &p - 1u32)
}

/// Rank of a state in `[0, |G|^2)`.
pub fn state_index(s: &PairState) -> Result<u64> {
    Ok(StateCodec::new(&s.spec)?.index(s))
}

/// Inverse of [`state_index`].
pub fn state_from_index(i: u64, spec: &GroupSpec) -> Result<PairState> {
    StateCodec::new(spec)?.state(i)
}

/// Mixed-radix rank/unrank plus index-level versions of the moves.
///
/// Uniform `p = 2` specs take a bit-packed path; everything else decodes
/// digits into a scratch buffer.
#[derive(Clone, Debug)]
pub struct StateCodec {
    spec: GroupSpec,
    count: u64,
    packed_bits: Option<u32>,
}

impl StateCodec {
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        let mut count: u64 = 1;
        for &d in spec.moduli().iter().chain(spec.moduli()) {
            count = count
                .checked_mul(d)
                .ok_or_else(|| Error::IndexOverflow(spec.state_count().to_string()))?;
        }
        let packed_bits =
            (spec.n() > 0 && spec.common_modulus() == Some(2)).then_some(spec.n() as u32);
        Ok(StateCodec {
            spec: spec.clone(),
            count,
            packed_bits,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn state_count(&self) -> u64 {
        self.count
    }

    pub fn index(&self, s: &PairState) -> u64 {
        debug_assert_eq!(s.spec, self.spec);
        let digits = s.g.entries.iter().chain(&s.k.entries);
        let radices = self.spec.moduli().iter().chain(self.spec.moduli());
        digits.zip(radices).fold(0u64, |acc, (&x, &d)| acc * d + x)
    }

    pub fn state(&self, i: u64) -> Result<PairState> {
        if i >= self.count {
            return Err(Error::IndexOutOfRange {
                index: i,
                count: self.count,
            });
        }
        let n = self.spec.n();
        let mut digits = vec![0u64; 2 * n];
        self.decode_into(i, &mut digits);
        let k = digits.split_off(n);
        Ok(PairState {
            g: ResidueVector { entries: digits },
            k: ResidueVector { entries: k },
            spec: self.spec.clone(),
        })
    }

    fn decode_into(&self, mut i: u64, digits: &mut [u64]) {
        let n = self.spec.n();
        for pos in (0..2 * n).rev() {
            let d = self.spec.moduli()[pos % n];
            digits[pos] = i % d;
            i /= d;
        }
    }

    fn encode(&self, digits: &[u64]) -> u64 {
        let n = self.spec.n();
        digits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (pos, &x)| acc * self.spec.moduli()[pos % n] + x)
    }

    /// A move evaluator with its own scratch space.
    pub fn mover(&self) -> Mover<'_> {
        Mover {
            codec: self,
            scratch: vec![0; 2 * self.spec.n()],
        }
    }
}

/// Applies moves directly to state indices.
pub struct Mover<'a> {
    codec: &'a StateCodec,
    scratch: Vec<u64>,
}

impl Mover<'_> {
    pub fn s(&mut self, i: u64) -> u64 {
        if let Some(n) = self.codec.packed_bits {
            let mask = (1u64 << n) - 1;
            let (g, k) = (i >> n, i & mask);
            return (k << n) | g;
        }
        let n = self.codec.spec.n();
        self.codec.decode_into(i, &mut self.scratch);
        let (g, k) = self.scratch.split_at_mut(n);
        for ((gi, ki), &d) in g.iter_mut().zip(k.iter_mut()).zip(self.codec.spec.moduli()) {
            let old_g = *gi;
            *gi = *ki;
            *ki = neg_mod(old_g, d);
        }
        self.codec.encode(&self.scratch)
    }

    pub fn t(&mut self, i: u64) -> u64 {
        if let Some(n) = self.codec.packed_bits {
            let mask = (1u64 << n) - 1;
            let g = i >> n;
            return i ^ (g & mask);
        }
        let n = self.codec.spec.n();
        self.codec.decode_into(i, &mut self.scratch);
        let (g, k) = self.scratch.split_at_mut(n);
        for ((gi, ki), &d) in g.iter().zip(k.iter_mut()).zip(self.codec.spec.moduli()) {
            *ki = add_mod(*ki, *gi, d);
        }
        self.codec.encode(&self.scratch)
    }

    /// Right action of `m`; the codec's spec must be `Z_{m.p}^n`.
    pub fn mat(&mut self, i: u64, m: &Mat2) -> u64 {
        if let Some(n) = self.codec.packed_bits {
            let mask = (1u64 << n) - 1;
            let (g, k) = (i >> n, i & mask);
            let pick = |bit: u64, v: u64| if bit == 1 { v } else { 0 };
            let ng = pick(m.a, g) ^ pick(m.c, k);
            let nk = pick(m.b, g) ^ pick(m.d, k);
            return (ng << n) | nk;
        }
        let n = self.codec.spec.n();
        let p = m.p;
        self.codec.decode_into(i, &mut self.scratch);
        let (g, k) = self.scratch.split_at_mut(n);
        for (gi, ki) in g.iter_mut().zip(k.iter_mut()) {
            let (x, y) = (*gi, *ki);
            *gi = add_mod(mul_mod(m.a, x, p), mul_mod(m.c, y, p), p);
            *ki = add_mod(mul_mod(m.b, x, p), mul_mod(m.d, y, p), p);
        }
        self.codec.encode(&self.scratch)
    }
}
