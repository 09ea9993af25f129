//! Brute-force face lattice of `Δ(n,k)`, used as ground truth.
//!
//! The lattice is built from vertices alone: each supporting constraint
//! (`x_i >= 0`, `x_i <= 1`, `Σx <= k`, `Σx >= k-1`) contributes the set of
//! vertices it holds with equality, and the faces are the closure of those
//! sets under intersection, plus the full vertex set. Dimensions come from
//! exact affine rank. None of the counting formulas are consulted here.
//!
//! Half-open counts keep the faces that are not contained in the removed
//! hyperplane `Σx = k-1`.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};

use crate::closed_form::{check_nk, FVector};
use crate::error::{Error, Result};
use crate::exact_math::{affine_dimension, Integer};

pub const DEFAULT_SIZE_GUARD: u32 = 8;

/// Environment variable overriding [`DEFAULT_SIZE_GUARD`].
pub const SIZE_GUARD_ENV: &str = "HYPERFV_MAX_N";

/// Hard ceiling: vertices are packed into a `u64`.
const MAX_AMBIENT_DIM: u32 = 64;

/// The oracle size guard, honoring `HYPERFV_MAX_N` when it parses.
pub fn size_guard() -> u32 {
    std::env::var(SIZE_GUARD_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .map_or(DEFAULT_SIZE_GUARD, |g| g.min(MAX_AMBIENT_DIM))
}

pub(crate) fn check_guard(n: u32, guard: u32) -> Result<()> {
    if n > guard {
        return Err(Error::SizeGuard {
            what: "oracle dimension n",
            requested: n,
            guard,
            hint: "raise it with HYPERFV_MAX_N",
        });
    }
    Ok(())
}

/// A 0/1 point of the cube; bit `i` holds coordinate `x_(i+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    bits: u64,
    n: u32,
}

impl Vertex {
    pub fn new(bits: u64, n: u32) -> Self {
        debug_assert!(n == 64 || bits >> n == 0);
        Self { bits, n }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Coordinate sum.
    pub fn level(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Coordinate `i`, zero based.
    pub fn coord(&self, i: u32) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn coords(&self) -> Vec<i64> {
        (0..self.n).map(|i| i64::from(self.coord(i))).collect()
    }
}

/// A defining inequality of `Δ(n,k)`, identified by the hyperplane on which
/// it is tight. Coordinate indices are zero based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SupportingConstraint {
    /// `x_i = 0`
    CoordinateLower(u32),
    /// `x_i = 1`
    CoordinateUpper(u32),
    /// `Σx = k`
    LevelUpper,
    /// `Σx = k - 1`
    LevelLower,
}

impl SupportingConstraint {
    /// All `2n + 2` constraints of `Δ(n,k)`.
    pub fn all(n: u32) -> Vec<Self> {
        (0..n)
            .map(Self::CoordinateLower)
            .chain((0..n).map(Self::CoordinateUpper))
            .chain([Self::LevelUpper, Self::LevelLower])
            .collect()
    }

    pub fn is_tight(&self, v: &Vertex, k: u32) -> bool {
        match *self {
            Self::CoordinateLower(i) => !v.coord(i),
            Self::CoordinateUpper(i) => v.coord(i),
            Self::LevelUpper => v.level() == k,
            Self::LevelLower => v.level() + 1 == k,
        }
    }
}

/// A non-empty face, keyed by the set of vertex indices it contains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    vertices: FixedBitSet,
    dim: usize,
}

impl Face {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_set(&self) -> &FixedBitSet {
        &self.vertices
    }

    /// Sorted indices into [`FaceLattice::vertices`].
    pub fn vertex_indices(&self) -> Vec<usize> {
        self.vertices.ones().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.count_ones(..)
    }
}

#[derive(Debug, Clone)]
pub struct FaceLattice {
    n: u32,
    k: u32,
    vertices: Vec<Vertex>,
    /// Sorted by dimension, then by vertex set.
    faces: Vec<Face>,
}

impl FaceLattice {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn contains(&self, set: &FixedBitSet) -> bool {
        self.faces.iter().any(|f| &f.vertices == set)
    }

    /// Whether every vertex of `face` sits on the removed level `Σx = k-1`.
    pub fn in_removed_hyperplane(&self, face: &Face) -> bool {
        face.vertices
            .ones()
            .all(|i| self.vertices[i].level() + 1 == self.k)
    }

    fn tabulate<'a>(&self, faces: impl Iterator<Item = &'a Face>) -> FVector {
        let mut counts = vec![Integer::zero(); self.n as usize + 1];
        for f in faces {
            counts[f.dim] += 1u32;
        }
        FVector(counts)
    }

    pub fn f_vector(&self) -> FVector {
        self.tabulate(self.faces.iter())
    }

    pub fn half_open_f_vector(&self) -> FVector {
        self.tabulate(self.faces.iter().filter(|f| !self.in_removed_hyperplane(f)))
    }

    /// Counts of the faces dropped by the half-open filter.
    pub fn removed_f_vector(&self) -> FVector {
        self.tabulate(self.faces.iter().filter(|f| self.in_removed_hyperplane(f)))
    }
}

/// The 0/1 vectors with coordinate sum `k-1` or `k`, in increasing order of
/// their bit word (`x_1` is the lowest bit).
pub fn enumerate_vertices(n: u32, k: u32) -> Result<Vec<Vertex>> {
    check_nk(n, k)?;
    if n > MAX_AMBIENT_DIM {
        return Err(Error::SizeGuard {
            what: "oracle dimension n",
            requested: n,
            guard: MAX_AMBIENT_DIM,
            hint: "vertices are packed into 64-bit words",
        });
    }
    // Walk only the words of popcount k-1 and k (Gosper's hack per level).
    let mut out = Vec::new();
    for level in [k - 1, k] {
        let mut word: u64 = if level == 0 {
            0
        } else {
            u64::MAX >> (64 - level)
        };
        loop {
            out.push(Vertex::new(word, n));
            if level == 0 || level == n {
                break;
            }
            let low = word & word.wrapping_neg();
            let ripple = word.wrapping_add(low);
            if ripple == 0 {
                break;
            }
            word = (((ripple ^ word) >> 2) / low) | ripple;
            if n < 64 && word >> n != 0 {
                break;
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// All non-empty faces of `Δ(n,k)`, subject to [`size_guard`].
pub fn face_lattice(n: u32, k: u32) -> Result<FaceLattice> {
    face_lattice_with_guard(n, k, size_guard())
}

pub fn face_lattice_with_guard(n: u32, k: u32, guard: u32) -> Result<FaceLattice> {
    check_nk(n, k)?;
    check_guard(n, guard)?;
    let vertices = enumerate_vertices(n, k)?;
    let count = vertices.len();

    let generators: Vec<FixedBitSet> = SupportingConstraint::all(n)
        .iter()
        .map(|c| {
            let mut set = FixedBitSet::with_capacity(count);
            for (i, v) in vertices.iter().enumerate() {
                set.set(i, c.is_tight(v, k));
            }
            set
        })
        .filter(|s| !s.is_clear())
        .collect();

    let mut full = FixedBitSet::with_capacity(count);
    full.insert_range(..);

    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut worklist = Vec::new();
    for s in std::iter::once(full).chain(generators.iter().cloned()) {
        if seen.insert(s.clone()) {
            worklist.push(s);
        }
    }
    while let Some(set) = worklist.pop() {
        for g in &generators {
            let mut meet = set.clone();
            meet.intersect_with(g);
            if !meet.is_clear() && !seen.contains(&meet) {
                seen.insert(meet.clone());
                worklist.push(meet);
            }
        }
    }

    let mut faces = seen
        .into_iter()
        .map(|set| {
            let points: Vec<_> = set.ones().map(|i| vertices[i].coords()).collect();
            let dim = affine_dimension(&points)?;
            Ok(Face { vertices: set, dim })
        })
        .collect::<Result<Vec<_>>>()?;
    faces.sort_by(|a, b| {
        a.dim
            .cmp(&b.dim)
            .then_with(|| a.vertices.ones().cmp(b.vertices.ones()))
    });

    Ok(FaceLattice {
        n,
        k,
        vertices,
        faces,
    })
}

pub fn f_vector_closed_oracle(n: u32, k: u32) -> Result<FVector> {
    Ok(face_lattice(n, k)?.f_vector())
}

pub fn f_vector_half_open_oracle(n: u32, k: u32) -> Result<FVector> {
    Ok(face_lattice(n, k)?.half_open_f_vector())
}

/// Per-dimension face totals of the unit cube cut into `Δ'(n,1), ..., Δ'(n,n)`.
///
/// Entry 0 is `2^n - 1` (every cube vertex but the origin).
pub fn cube_decomposition_f(n: u32) -> Result<Vec<Integer>> {
    if n == 0 {
        return Err(Error::InvalidSpec { n, k: 1 });
    }
    check_guard(n, size_guard())?;
    let mut totals = vec![Integer::zero(); n as usize + 1];
    for k in 1..=n {
        let cell = f_vector_half_open_oracle(n, k)?;
        for (t, c) in totals.iter_mut().zip(cell.entries()) {
            *t += c;
        }
    }
    debug_assert_eq!(totals[0], (Integer::one() << n) - 1u32);
    Ok(totals)
}
