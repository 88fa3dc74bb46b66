//! Exact arithmetic in the finite 2-groups `G_k`.
//!
//! `G_k` is the two-generator 2-group with presentation
//!
//! ```text
//! < x, y |  x^(2^(k+1)),  y^4,  [x^(2^k), y],  [y^2, x],
//!           [y_0, y_i]^2, [y_0, y_i, x], [y_0, y_i, y]   for 1 <= i <= 2^(k-1) >
//! ```
//!
//! where `y_i = y^(x^i)`.  Every element has a unique normal form
//!
//! ```text
//! x^a * y_0^(e_0) * ... * y_(2^k - 1)^(e_(2^k - 1)) * (y^2)^d * c_1^(f_1) * ... * c_(2^(k-1))^(f_(2^(k-1)))
//! ```
//!
//! with `a` taken modulo `2^(k+1)`, all other exponents modulo 2, and
//! `c_d = [y_0, y_d]`.  The factors `y^2` and `c_d` are central of order 2,
//! so multiplication reduces to manipulating the `y`-block:
//!
//! * conjugation by `x^t` rotates `y`-indices by `t` modulo `2^k`
//!   (valid because `[x^(2^k), y] = 1`), and a rotated ascending word
//!   re-sorts with central corrections `c_fold(u - w)` for every wrapped
//!   index `w` crossing an unwrapped index `u`;
//! * merging two ascending `y`-words XORs the index sets, flips the `y^2`
//!   bit once per repeated index (`y_i^2 = y^2`), and contributes
//!   `c_fold(j - i)` for every out-of-order pair `j > i`, where
//!   `fold(d) = min(d, 2^k - d)` collapses `[y_0, y_(2^k - i)] = [y_0, y_i]`.
//!
//! Commutators are left-normed: `[a, b] = a^-1 b^-1 a b` and
//! `b^a = a^-1 b a`, so that `y_i = y^(x^i) = x^-i y x^i`.
//!
//! All corrections land in coordinates strictly deeper than the inputs'
//! leading coordinate, which makes the coordinate map [`Element::coords`]
//! triangular; the subgroup machinery relies on exactly that property.

use crate::error::{Error, Result};

/// Largest supported level: the `y`-block must fit in a `u64`.
pub const MAX_LEVEL: u32 = 6;

/// The level `k` together with the sizes derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupContext {
    k: u32,
    n_y: u32,
    n_c: u32,
    x_mod: u32,
    log_order: u32,
}

/// Names for the distinguished generators and words of `G_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    /// The generator `x`.
    X,
    /// The generator `y = y_0`.
    Y,
    /// `y_i = y^(x^i)` for `0 <= i < 2^k`.
    Yi(u32),
    /// `c_d = [y_0, y_d]` for `1 <= d <= 2^(k-1)`.
    Cd(u32),
    /// The central involution `y^2`.
    YSquared,
    /// `w = y_(2^k - 1) ... y_1 y_0`.
    W,
}

impl GroupContext {
    /// Create the context for `G_k`.  Requires `2 <= k <= MAX_LEVEL`.
    pub fn new(k: u32) -> Result<Self> {
        if !(2..=MAX_LEVEL).contains(&k) {
            return Err(Error::UnsupportedLevel { k, max: MAX_LEVEL });
        }
        let n_y = 1u32 << k;
        let n_c = 1u32 << (k - 1);
        Ok(GroupContext {
            k,
            n_y,
            n_c,
            x_mod: 1u32 << (k + 1),
            log_order: n_y + n_c + k + 2,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of `y`-coordinates, `2^k`.
    pub fn n_y(&self) -> u32 {
        self.n_y
    }

    /// Number of `c`-coordinates, `2^(k-1)`.
    pub fn n_c(&self) -> u32 {
        self.n_c
    }

    /// Modulus of the `x`-exponent, `2^(k+1)`.
    pub fn x_mod(&self) -> u32 {
        self.x_mod
    }

    /// `log_2 |G_k| = 2^k + 2^(k-1) + k + 2`.
    pub fn log_order(&self) -> u32 {
        self.log_order
    }

    pub fn identity(&self) -> Element {
        Element {
            k: self.k as u8,
            a: 0,
            e: 0,
            delta: false,
            f: 0,
        }
    }

    /// The named generator or word, as a normal form.
    pub fn generator(&self, gen: Gen) -> Result<Element> {
        let mut g = self.identity();
        match gen {
            Gen::X => g.a = 1,
            Gen::Y => g.e = 1,
            Gen::Yi(i) => {
                if i >= self.n_y {
                    return Err(Error::IndexOutOfRange {
                        what: "y_i",
                        index: i as u64,
                        lo: 0,
                        hi: (self.n_y - 1) as u64,
                    });
                }
                g.e = 1u64 << i;
            }
            Gen::Cd(d) => {
                if d == 0 || d > self.n_c {
                    return Err(Error::IndexOutOfRange {
                        what: "c_d",
                        index: d as u64,
                        lo: 1,
                        hi: self.n_c as u64,
                    });
                }
                g.f = 1u64 << (d - 1);
            }
            Gen::YSquared => g.delta = true,
            Gen::W => g.e = self.y_mask(),
        }
        Ok(g)
    }

    pub fn x(&self) -> Element {
        self.generator(Gen::X).unwrap()
    }

    pub fn y(&self) -> Element {
        self.generator(Gen::Y).unwrap()
    }

    pub fn y_i(&self, i: u32) -> Result<Element> {
        self.generator(Gen::Yi(i))
    }

    pub fn c_d(&self, d: u32) -> Result<Element> {
        self.generator(Gen::Cd(d))
    }

    pub fn y_squared(&self) -> Element {
        self.generator(Gen::YSquared).unwrap()
    }

    pub fn w(&self) -> Element {
        self.generator(Gen::W).unwrap()
    }

    /// Left-normed commutator `c_i = [y, x, ..., x]` with `i - 1` copies of
    /// `x`; `c_1 = y`.
    pub fn c_word(&self, i: u32) -> Result<Element> {
        if i == 0 {
            return Err(Error::IndexOutOfRange {
                what: "c_word",
                index: 0,
                lo: 1,
                hi: u64::MAX,
            });
        }
        let mut c = self.y();
        let x = self.x();
        for _ in 1..i {
            c = c.comm_unchecked(&x);
        }
        Ok(c)
    }

    /// `z_i = [c_(i-1), y] = [y, x, ..., x, y]` with `i - 2` copies of `x`;
    /// defined for `i >= 2`.
    pub fn z_word(&self, i: u32) -> Result<Element> {
        if i < 2 {
            return Err(Error::IndexOutOfRange {
                what: "z_word",
                index: i as u64,
                lo: 2,
                hi: u64::MAX,
            });
        }
        Ok(self.c_word(i - 1)?.comm_unchecked(&self.y()))
    }

    fn y_mask(&self) -> u64 {
        if self.n_y == 64 {
            u64::MAX
        } else {
            (1u64 << self.n_y) - 1
        }
    }
}

/// Normal-form coordinates of one element of `G_k`.
///
/// Equality of elements is coordinate equality; the normal form is unique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Element {
    k: u8,
    /// Exponent of `x`, modulo `2^(k+1)`.
    a: u32,
    /// Bit `i` is the exponent of `y_i`.
    e: u64,
    /// Exponent of the central `y^2`.
    delta: bool,
    /// Bit `d - 1` is the exponent of `c_d = [y_0, y_d]`.
    f: u64,
}

impl Element {
    fn n_y(&self) -> u32 {
        1u32 << self.k
    }

    fn x_mod(&self) -> u32 {
        1u32 << (self.k + 1)
    }

    fn log_order(&self) -> u32 {
        let k = self.k as u32;
        (1u32 << k) + (1u32 << (k - 1)) + k + 2
    }

    pub fn level(&self) -> u32 {
        self.k as u32
    }

    pub fn x_exponent(&self) -> u32 {
        self.a
    }

    pub fn y_bits(&self) -> u64 {
        self.e
    }

    pub fn y_squared_bit(&self) -> bool {
        self.delta
    }

    pub fn c_bits(&self) -> u64 {
        self.f
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.e == 0 && !self.delta && self.f == 0
    }

    fn check_same_context(&self, other: &Element) -> Result<()> {
        if self.k != other.k {
            return Err(Error::ContextMismatch {
                lhs: self.k as u32,
                rhs: other.k as u32,
            });
        }
        Ok(())
    }

    /// `fold(d) = min(d, 2^k - d)`, the index with `[y_j, y_i] = c_fold(j - i)`.
    fn fold(&self, d: u32) -> u32 {
        let n = self.n_y();
        debug_assert!(d >= 1 && d < n);
        d.min(n - d)
    }

    /// `c`-bit contributed by swapping `y_j` past `y_i` with `j > i`.
    fn swap_bit(&self, j: u32, i: u32) -> u64 {
        1u64 << (self.fold(j - i) - 1)
    }

    /// Sum of swap corrections for merging ascending words `left * right`:
    /// one `c_fold(j - i)` per pair `j` in `left`, `i` in `right`, `j > i`.
    fn merge_corrections(&self, left: u64, right: u64) -> u64 {
        let mut corr = 0u64;
        let mut l = left;
        while l != 0 {
            let j = l.trailing_zeros();
            l &= l - 1;
            let mut below = right & ((1u64 << j) - 1);
            while below != 0 {
                let i = below.trailing_zeros();
                below &= below - 1;
                corr ^= self.swap_bit(j, i);
            }
        }
        corr
    }

    /// Conjugate the `y`-word by `x^m`: rotate indices up by `m` and re-sort,
    /// returning the rotated bits and the central correction.
    fn rotate_y(&self, e: u64, m: u32) -> (u64, u64) {
        let n = self.n_y();
        let m = m % n;
        if m == 0 || e == 0 {
            return (e, 0);
        }
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let unwrapped = (e << m) & mask;
        let wrapped = e >> (n - m);
        let rotated = unwrapped | wrapped;
        // The wrapped block lands below the unwrapped block and must cross it.
        let mut corr = 0u64;
        let mut w = wrapped;
        while w != 0 {
            let wi = w.trailing_zeros();
            w &= w - 1;
            let mut u = unwrapped;
            while u != 0 {
                let ui = u.trailing_zeros();
                u &= u - 1;
                corr ^= self.swap_bit(ui, wi);
            }
        }
        (rotated, corr)
    }

    fn mul_unchecked(&self, rhs: &Element) -> Element {
        debug_assert_eq!(self.k, rhs.k);
        let (rot_e, f_rot) = self.rotate_y(self.e, rhs.a % self.n_y());
        let delta_flip = (rot_e & rhs.e).count_ones() & 1 == 1;
        let f_merge = self.merge_corrections(rot_e, rhs.e);
        Element {
            k: self.k,
            a: (self.a + rhs.a) % self.x_mod(),
            e: rot_e ^ rhs.e,
            delta: self.delta ^ rhs.delta ^ delta_flip,
            f: self.f ^ rhs.f ^ f_rot ^ f_merge,
        }
    }

    /// Product in normal form.  Fails if the operands live in different `G_k`.
    pub fn mul(&self, rhs: &Element) -> Result<Element> {
        self.check_same_context(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    /// Inverse, by the closed form
    /// `g^-1 = x^-a * ((y-block)^(x^-a))^-1 * (central part)`.
    pub fn inv(&self) -> Element {
        let n = self.n_y();
        let m = (n - self.a % n) % n;
        let (rot_e, f_rot) = self.rotate_y(self.e, m);
        Element {
            k: self.k,
            a: (self.x_mod() - self.a) % self.x_mod(),
            e: rot_e,
            delta: self.delta ^ (rot_e.count_ones() & 1 == 1),
            f: self.f ^ f_rot ^ self.merge_corrections(rot_e, rot_e),
        }
    }

    /// `g^n` by square-and-multiply; negative exponents via the group
    /// exponent, which divides `2^(k+1)`.
    pub fn pow(&self, n: i64) -> Element {
        let x_mod = self.x_mod() as i64;
        let mut e = ((n % x_mod) + x_mod) % x_mod;
        let mut base = *self;
        let mut acc = Element {
            k: self.k,
            a: 0,
            e: 0,
            delta: false,
            f: 0,
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn comm_unchecked(&self, rhs: &Element) -> Element {
        self.inv()
            .mul_unchecked(&rhs.inv())
            .mul_unchecked(self)
            .mul_unchecked(rhs)
    }

    /// Left-normed commutator `[self, rhs] = self^-1 rhs^-1 self rhs`.
    pub fn comm(&self, rhs: &Element) -> Result<Element> {
        self.check_same_context(rhs)?;
        Ok(self.comm_unchecked(rhs))
    }

    /// Iterated left-normed commutator `[self, rhs, ..., rhs]` (`m` copies).
    pub fn comm_left(&self, rhs: &Element, m: u32) -> Result<Element> {
        self.check_same_context(rhs)?;
        let mut c = *self;
        for _ in 0..m {
            c = c.comm_unchecked(rhs);
        }
        Ok(c)
    }

    /// Conjugate `self^rhs = rhs^-1 * self * rhs`.
    pub fn conj(&self, rhs: &Element) -> Result<Element> {
        self.check_same_context(rhs)?;
        Ok(rhs.inv().mul_unchecked(self).mul_unchecked(rhs))
    }

    /// Order of the element, a power of 2 dividing `2^(k+1)`.
    pub fn order(&self) -> u64 {
        let mut t = 1u64;
        let mut cur = *self;
        while !cur.is_identity() {
            cur = cur.mul_unchecked(&cur);
            t *= 2;
        }
        t
    }

    /// Polycyclic coordinate vector: `x`-bits 0..=k first, then
    /// `e_0 .. e_(2^k - 1)`, then the `y^2` bit, then `f_1 .. f_(2^(k-1))`.
    pub fn coords(&self) -> u128 {
        let k = self.k as u32;
        let n_y = self.n_y();
        let mut c = self.a as u128;
        c |= (self.e as u128) << (k + 1);
        c |= (self.delta as u128) << (k + 1 + n_y);
        c |= (self.f as u128) << (k + 2 + n_y);
        c
    }

    /// Index of the first nonzero coordinate; `log_2 |G_k|` for the identity.
    pub fn depth(&self) -> u32 {
        let c = self.coords();
        if c == 0 {
            self.log_order()
        } else {
            c.trailing_zeros()
        }
    }
}
