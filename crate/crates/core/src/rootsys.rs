//! Type `A_{n-1}` root-system combinatorics: the Cartan subspace, its
//! complexified dual, the Weyl group `S_n` and the partition lattice of
//! Levi subgroups.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::form::QuadForm;
use crate::{Error, Result};

const SUM_TOL: f64 = 1e-12;
const LEVI_RANK_CAP: usize = 8;

/// Real vector in the trace-zero Cartan subspace `a` of `gl(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CartanVector {
    coords: Vec<f64>,
}

impl CartanVector {
    /// Builds a vector, checking the zero-sum invariant relative to the
    /// coordinate norm.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let sum: f64 = coords.iter().sum();
        let norm: f64 = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if sum.abs() > SUM_TOL * norm.max(1.0) {
            return Err(Error::Domain(format!(
                "coordinates must sum to zero (sum = {sum:e})"
            )));
        }
        Ok(CartanVector { coords })
    }

    /// Projects arbitrary coordinates onto the trace-zero hyperplane.
    pub fn project(mut coords: Vec<f64>) -> Self {
        let mean = coords.iter().sum::<f64>() / coords.len() as f64;
        for c in &mut coords {
            *c -= mean;
        }
        CartanVector { coords }
    }

    pub fn zero(n: usize) -> Self {
        CartanVector {
            coords: vec![0.0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn norm(&self, form: QuadForm) -> f64 {
        form.norm_a(self.n(), &self.coords)
    }

    /// Dual pairing `<lambda, X>` with a functional given in coordinates.
    pub fn pair(&self, dual_coords: &[f64]) -> f64 {
        self.coords
            .iter()
            .zip(dual_coords)
            .map(|(x, l)| x * l)
            .sum()
    }

    pub fn scale(&self, t: f64) -> Self {
        CartanVector {
            coords: self.coords.iter().map(|c| c * t).collect(),
        }
    }
}

/// Point of the complexified dual Cartan space `a*_C`, stored as `n`
/// complex coordinates summing to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralPoint {
    coords: Vec<Complex64>,
}

impl SpectralPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        let sum: Complex64 = coords.iter().sum();
        let norm: f64 = coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if sum.re.abs() > SUM_TOL * norm.max(1.0) || sum.im.abs() > SUM_TOL * norm.max(1.0) {
            return Err(Error::Domain(format!(
                "spectral coordinates must sum to zero (sum = {sum})"
            )));
        }
        Ok(SpectralPoint { coords })
    }

    /// Purely imaginary point `i*nu` from real dual coordinates.
    pub fn imaginary(nu: &[f64]) -> Result<Self> {
        Self::new(nu.iter().map(|&v| Complex64::new(0.0, v)).collect())
    }

    pub fn real(xi: &[f64]) -> Result<Self> {
        Self::new(xi.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn zero(n: usize) -> Self {
        SpectralPoint {
            coords: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn is_imaginary(&self, tol: f64) -> bool {
        self.coords.iter().all(|c| c.re.abs() <= tol)
    }

    /// Imaginary parts as a real coordinate vector.
    pub fn im_coords(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.im).collect()
    }

    pub fn norm(&self, form: QuadForm) -> f64 {
        let re: Vec<f64> = self.coords.iter().map(|c| c.re).collect();
        let im: Vec<f64> = self.coords.iter().map(|c| c.im).collect();
        (form.norm_dual(self.n(), &re).powi(2) + form.norm_dual(self.n(), &im).powi(2)).sqrt()
    }

    pub fn add(&self, other: &SpectralPoint) -> SpectralPoint {
        SpectralPoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &SpectralPoint) -> SpectralPoint {
        SpectralPoint {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, t: f64) -> SpectralPoint {
        SpectralPoint {
            coords: self.coords.iter().map(|c| c * t).collect(),
        }
    }

    pub fn permute(&self, w: &WeylElement) -> SpectralPoint {
        SpectralPoint {
            coords: w.apply_slice(&self.coords),
        }
    }
}

/// Element of the Weyl group `S_n`, acting on coordinates by permutation.
///
/// `perm[i] = j` means position `i` of the image is filled from position
/// `j` of the argument.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    perm: Vec<usize>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            perm: (0..n).collect(),
        }
    }

    pub fn from_perm(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Domain("not a permutation".into()));
            }
            seen[p] = true;
        }
        Ok(WeylElement { perm })
    }

    /// Transposition of `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, j);
        WeylElement { perm }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply_slice<T: Copy>(&self, v: &[T]) -> Vec<T> {
        self.perm.iter().map(|&j| v[j]).collect()
    }

    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        // (self * other)(v) = self.apply(other.apply(v))
        WeylElement {
            perm: other.perm.iter().map(|&j| self.perm[j]).collect(),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut inv = vec![0; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            inv[j] = i;
        }
        WeylElement { perm: inv }
    }

    /// Cycles of the permutation, each sorted, ordered by least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.perm.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.perm[i];
            }
            cyc.sort_unstable();
            cycles.push(cyc);
        }
        cycles
    }

    /// Enumerates all of `S_n` (Heap's algorithm).
    pub fn enumerate(n: usize) -> Vec<WeylElement> {
        let mut out = Vec::new();
        let mut v: Vec<usize> = (0..n).collect();
        heap_permutations(&mut v, n, &mut out);
        out
    }
}

fn heap_permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<WeylElement>) {
    if k == 1 {
        out.push(WeylElement { perm: v.clone() });
        return;
    }
    for i in 0..k {
        heap_permutations(v, k - 1, out);
        if k % 2 == 0 {
            v.swap(i, k - 1);
        } else {
            v.swap(0, k - 1);
        }
    }
}

/// Semi-standard Levi subgroup, encoded as a set partition of `{0,..,n-1}`
/// with blocks sorted by least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeviSubgroup {
    blocks: Vec<Vec<usize>>,
    n: usize,
}

impl LeviSubgroup {
    pub fn new(mut blocks: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in &mut blocks {
            b.sort_unstable();
            if b.is_empty() {
                return Err(Error::Domain("empty block".into()));
            }
            for &i in b.iter() {
                if i >= n || seen[i] {
                    return Err(Error::Domain("blocks must partition {0..n}".into()));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Domain("blocks must cover {0..n}".into()));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(LeviSubgroup { blocks, n })
    }

    /// The minimal Levi `M_0` (all singletons).
    pub fn minimal(n: usize) -> Self {
        LeviSubgroup {
            blocks: (0..n).map(|i| vec![i]).collect(),
            n,
        }
    }

    /// The full group `G` (one block).
    pub fn full(n: usize) -> Self {
        LeviSubgroup {
            blocks: vec![(0..n).collect()],
            n,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_full(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn is_minimal(&self) -> bool {
        self.blocks.len() == self.n
    }

    /// Block index of each coordinate.
    pub fn block_of(&self) -> Vec<usize> {
        let mut of = vec![0; self.n];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &i in b {
                of[i] = bi;
            }
        }
        of
    }

    /// Refinement order: `self <= other` iff every block of `self` is
    /// contained in a block of `other`.
    pub fn refines(&self, other: &LeviSubgroup) -> bool {
        let of = other.block_of();
        self.blocks.iter().all(|b| {
            let target = of[b[0]];
            b.iter().all(|&i| of[i] == target)
        })
    }

    /// Meet in the partition lattice (common refinement).
    pub fn meet(&self, other: &LeviSubgroup) -> LeviSubgroup {
        let (a, b) = (self.block_of(), other.block_of());
        let mut map = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.n {
            let key = (a[i], b[i]);
            let idx = *map.entry(key).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[idx].push(i);
        }
        LeviSubgroup::new(blocks, self.n).expect("meet is a partition")
    }

    /// Join in the partition lattice (transitive closure of block overlap).
    pub fn join(&self, other: &LeviSubgroup) -> LeviSubgroup {
        // union-find over coordinates
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            if parent[i] != i {
                parent[i] = find(parent, parent[i]);
            }
            parent[i]
        }
        for b in self.blocks.iter().chain(other.blocks.iter()) {
            for w in b.windows(2) {
                let (r0, r1) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[r0] = r1;
            }
        }
        let mut map = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.n {
            let r = find(&mut parent, i);
            let idx = *map.entry(r).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[idx].push(i);
        }
        LeviSubgroup::new(blocks, self.n).expect("join is a partition")
    }

    /// Maximal proper Levis: partitions into exactly two blocks.
    pub fn maximal(n: usize) -> Vec<LeviSubgroup> {
        enumerate_levis(n)
            .unwrap_or_default()
            .into_iter()
            .filter(|m| m.blocks.len() == 2)
            .collect()
    }
}

/// Orthonormal (standard dot) basis of the trace-zero hyperplane: the
/// Helmert vectors `b_k = (1,..,1,-k,0,..,0)/sqrt(k(k+1))` with `k` ones,
/// `k = 1..n-1`.
pub fn helmert_basis(n: usize) -> Vec<Vec<f64>> {
    (1..n)
        .map(|k| {
            let a = 1.0 / ((k * (k + 1)) as f64).sqrt();
            let mut b = vec![0.0; n];
            for bj in b.iter_mut().take(k) {
                *bj = a;
            }
            b[k] = -(k as f64) * a;
            b
        })
        .collect()
}

impl SpectralPoint {
    /// Coordinates in the Helmert basis (length `n - 1`).
    pub fn to_helmert(&self) -> Vec<Complex64> {
        let basis = helmert_basis(self.n());
        basis
            .iter()
            .map(|b| {
                self.coords
                    .iter()
                    .zip(b)
                    .map(|(c, &x)| c * x)
                    .sum::<Complex64>()
            })
            .collect()
    }

    /// Reconstructs the `n` trace-zero coordinates from Helmert
    /// coordinates.
    pub fn from_helmert(l: &[Complex64]) -> SpectralPoint {
        let n = l.len() + 1;
        let basis = helmert_basis(n);
        let mut coords = vec![Complex64::new(0.0, 0.0); n];
        for (lk, b) in l.iter().zip(&basis) {
            for (c, &x) in coords.iter_mut().zip(b) {
                *c += lk * x;
            }
        }
        SpectralPoint { coords }
    }
}

impl CartanVector {
    /// Coordinates in the Helmert basis (length `n - 1`).
    pub fn to_helmert(&self) -> Vec<f64> {
        let basis = helmert_basis(self.n());
        basis
            .iter()
            .map(|b| self.coords.iter().zip(b).map(|(c, x)| c * x).sum())
            .collect()
    }

    /// Reconstructs the `n` trace-zero coordinates from Helmert
    /// coordinates.
    pub fn from_helmert(x: &[f64]) -> CartanVector {
        let n = x.len() + 1;
        let basis = helmert_basis(n);
        let mut coords = vec![0.0; n];
        for (xk, b) in x.iter().zip(&basis) {
            for (c, &v) in coords.iter_mut().zip(b) {
                *c += xk * v;
            }
        }
        CartanVector { coords }
    }
}

/// Half-sum of positive roots: `((n-1)/2, (n-3)/2, ..., -(n-1)/2)`.
pub fn rho(n: usize) -> Result<CartanVector> {
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    let coords = (0..n)
        .map(|i| (n as f64 - 1.0) / 2.0 - i as f64)
        .collect();
    CartanVector::new(coords)
}

/// Symmetric-space dimension `d = n(n+1)/2 - 1` and split rank `r = n - 1`.
pub fn dims(n: usize) -> Result<(usize, usize)> {
    if n < 2 {
        return Err(Error::RankTooSmall(n));
    }
    Ok((n * (n + 1) / 2 - 1, n - 1))
}

/// Decomposes `lambda = lambda_M + lambda^M`: block-average projection and
/// its within-block complement.
pub fn levi_decompose(lambda: &SpectralPoint, m: &LeviSubgroup) -> (SpectralPoint, SpectralPoint) {
    let n = lambda.n();
    let mut lam_m = vec![Complex64::new(0.0, 0.0); n];
    for b in m.blocks() {
        let avg: Complex64 = b.iter().map(|&i| lambda.coords()[i]).sum::<Complex64>()
            / Complex64::new(b.len() as f64, 0.0);
        for &i in b {
            lam_m[i] = avg;
        }
    }
    let lam_up: Vec<Complex64> = lambda
        .coords()
        .iter()
        .zip(&lam_m)
        .map(|(l, p)| l - p)
        .collect();
    (
        SpectralPoint { coords: lam_m },
        SpectralPoint { coords: lam_up },
    )
}

/// The smallest Levi `M_w` containing `w`: blocks are the cycles of `w`.
pub fn fixed_levi(w: &WeylElement) -> LeviSubgroup {
    LeviSubgroup::new(w.cycles(), w.n()).expect("cycles partition {0..n}")
}

/// All set partitions of `{0,..,n-1}`; count is the Bell number `B_n`.
pub fn enumerate_levis(n: usize) -> Result<Vec<LeviSubgroup>> {
    if n > LEVI_RANK_CAP {
        return Err(Error::RankTooLarge(n, LEVI_RANK_CAP));
    }
    // restricted-growth strings
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let nblocks = rgs.iter().copied().max().unwrap_or(0) + 1;
        let mut blocks = vec![Vec::new(); nblocks];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        out.push(LeviSubgroup::new(blocks, n)?);
        // advance the restricted-growth string
        let mut i = n;
        loop {
            if i == 1 {
                return Ok(out);
            }
            i -= 1;
            let cap = rgs[..i].iter().copied().max().unwrap_or(0) + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
        }
    }
}
