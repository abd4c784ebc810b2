//! Bitset world sets and binary relations over at most [`MAX_WORLDS`] worlds.

use std::fmt;

/// Largest supported model. Relations are stored as `k * k` bits in a `u64`.
pub const MAX_WORLDS: usize = 8;

/// A set of worlds of a `k`-world model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Worlds {
    pub k: usize,
    pub bits: u64,
}

/// A binary relation on the worlds of a `k`-world model. Pair `(u, v)` is bit
/// `u * k + v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rel {
    pub k: usize,
    pub bits: u64,
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Worlds {
    pub fn empty(k: usize) -> Worlds {
        Worlds { k, bits: 0 }
    }

    pub fn full(k: usize) -> Worlds {
        Worlds {
            k,
            bits: low_mask(k),
        }
    }

    pub fn from_iter(k: usize, ws: impl IntoIterator<Item = usize>) -> Worlds {
        let mut out = Worlds::empty(k);
        for w in ws {
            assert!(w < k, "world {w} out of range for {k} worlds");
            out.bits |= 1 << w;
        }
        out
    }

    pub fn contains(&self, w: usize) -> bool {
        self.bits >> w & 1 == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.k).filter(|&w| self.contains(w))
    }

    pub fn and(self, o: Worlds) -> Worlds {
        Worlds {
            k: self.k,
            bits: self.bits & o.bits,
        }
    }

    pub fn or(self, o: Worlds) -> Worlds {
        Worlds {
            k: self.k,
            bits: self.bits | o.bits,
        }
    }

    pub fn complement(self) -> Worlds {
        Worlds {
            k: self.k,
            bits: !self.bits & low_mask(self.k),
        }
    }

    pub fn subset_of(&self, o: &Worlds) -> bool {
        self.bits & !o.bits == 0
    }
}

impl fmt::Display for Worlds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.iter().map(|w| w.to_string()).collect();
        write!(f, "{{{}}}", ws.join(","))
    }
}

impl Rel {
    pub fn empty(k: usize) -> Rel {
        Rel { k, bits: 0 }
    }

    pub fn full(k: usize) -> Rel {
        Rel {
            k,
            bits: low_mask(k * k),
        }
    }

    pub fn identity(k: usize) -> Rel {
        Rel::diagonal(Worlds::full(k))
    }

    /// `{(w, w) | w in s}`.
    pub fn diagonal(s: Worlds) -> Rel {
        let mut r = Rel::empty(s.k);
        for w in s.iter() {
            r.insert(w, w);
        }
        r
    }

    pub fn from_pairs(k: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Rel {
        let mut r = Rel::empty(k);
        for (u, v) in pairs {
            assert!(u < k && v < k, "pair ({u},{v}) out of range for {k} worlds");
            r.insert(u, v);
        }
        r
    }

    pub fn insert(&mut self, u: usize, v: usize) {
        self.bits |= 1 << (u * self.k + v);
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.bits >> (u * self.k + v) & 1 == 1
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.k;
        (0..k * k)
            .filter(move |b| self.bits >> b & 1 == 1)
            .map(move |b| (b / k, b % k))
    }

    /// Successors of `u` as a world set.
    pub fn row(&self, u: usize) -> Worlds {
        Worlds {
            k: self.k,
            bits: self.bits >> (u * self.k) & low_mask(self.k),
        }
    }

    pub fn union(self, o: Rel) -> Rel {
        Rel {
            k: self.k,
            bits: self.bits | o.bits,
        }
    }

    pub fn intersect(self, o: Rel) -> Rel {
        Rel {
            k: self.k,
            bits: self.bits & o.bits,
        }
    }

    /// Pairs of `self` not in `o`.
    pub fn minus(self, o: Rel) -> Rel {
        Rel {
            k: self.k,
            bits: self.bits & !o.bits,
        }
    }

    pub fn complement(self) -> Rel {
        Rel {
            k: self.k,
            bits: !self.bits & low_mask(self.k * self.k),
        }
    }

    /// Relational composition: first `self`, then `o`.
    pub fn compose(self, o: Rel) -> Rel {
        let mut out = Rel::empty(self.k);
        for u in 0..self.k {
            let mut row = 0u64;
            for w in self.row(u).iter() {
                row |= o.row(w).bits;
            }
            out.bits |= row << (u * self.k);
        }
        out
    }

    pub fn converse(self) -> Rel {
        Rel::from_pairs(
            self.k,
            self.pairs().map(|(u, v)| (v, u)).collect::<Vec<_>>(),
        )
    }

    pub fn subset_of(&self, o: &Rel) -> bool {
        self.bits & !o.bits == 0
    }

    pub fn is_transitive(&self) -> bool {
        self.compose(*self).subset_of(self)
    }

    /// `{u | exists v in s. (u, v) in self}`.
    pub fn preimage(&self, s: Worlds) -> Worlds {
        Worlds::from_iter(
            self.k,
            (0..self.k).filter(|&u| self.row(u).bits & s.bits != 0),
        )
    }

    /// `{v | exists u in s. (u, v) in self}`.
    pub fn image(&self, s: Worlds) -> Worlds {
        let mut bits = 0;
        for u in s.iter() {
            bits |= self.row(u).bits;
        }
        Worlds { k: self.k, bits }
    }

    /// `{w | (w, w) in self}`.
    pub fn diag_worlds(&self) -> Worlds {
        Worlds::from_iter(self.k, (0..self.k).filter(|&w| self.contains(w, w)))
    }

    /// Least transitive relation containing `self`.
    pub fn closure_plus(self) -> Rel {
        let mut cur = self;
        loop {
            let next = cur.union(cur.compose(cur));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.pairs().map(|(u, v)| format!("({u},{v})")).collect();
        write!(f, "{{{}}}", ps.join(" "))
    }
}

/// Transitive closure of `r`, as a free function.
pub fn closure_plus(r: Rel) -> Rel {
    r.closure_plus()
}
