use std::fmt;
use std::str::FromStr;

/// A permutation of {1,2,3,4} in one-line notation: `(i,j,k,l)` sends 1 to
/// i, 2 to j, 3 to k and 4 to l. This is not cycle notation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a permutation of 1..4: `{0}`")]
pub struct PermParseError(pub String);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// From zero-based images.
    pub fn from_images(images: [usize; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &i in &images {
            if i >= 4 || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm4(images.map(|i| i as u8)))
    }

    /// From the one-based images `(σ(1), σ(2), σ(3), σ(4))`.
    pub fn one_line(images: [usize; 4]) -> Option<Perm4> {
        if images.contains(&0) {
            return None;
        }
        Self::from_images(images.map(|i| i - 1))
    }

    /// Zero-based image of zero-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> [usize; 4] {
        self.0.map(|i| i as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm4) -> Perm4 {
        Perm4(std::array::from_fn(|i| self.0[other.0[i] as usize]))
    }

    pub fn inverse(&self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm4(inv)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn order(&self) -> u32 {
        let mut p = *self;
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    pub fn is_involution(&self) -> bool {
        self.order() == 2
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..4).filter(|&i| self.apply(i) == i).collect()
    }

    /// Cycle lengths in decreasing order; equal exactly for conjugate permutations.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = [false; 4];
        let mut out = Vec::new();
        for start in 0..4 {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.apply(i);
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// All 24 permutations in lexicographic order of their images.
    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        if let Some(p) = Perm4::from_images([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0.map(|i| i + 1);
        write!(f, "({a},{b},{c},{d})")
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Perm4 {
    type Err = PermParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || PermParseError(s.to_string());
        let body = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(err)?;
        let nums: Vec<usize> = body.split(',').map(|t| t.trim().parse().map_err(|_| err())).collect::<Result<_, _>>()?;
        let arr: [usize; 4] = nums.try_into().map_err(|_| err())?;
        Perm4::one_line(arr).ok_or_else(err)
    }
}
