//! Modules over prime fields: elementary abelian sections of a permutation
//! group viewed as `F_p G`-modules, and the linear algebra needed to split
//! them (spinning, MeatAxe-style chopping, homomorphism spaces, radicals and
//! semisimple decompositions).
//!
//! Vectors are rows and matrices act on the right: `v ↦ v·A`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{is_prime, NormalSection, PermGroup};
use crate::params::Params;
use crate::perm::Permutation;

pub type Vector = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

#[inline]
fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a != 0
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vector], cols: usize) -> Self {
        let mut m = Self::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix, p: u64) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + a * other.get(k, j)) % p;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add_scaled(&self, other: &Matrix, c: u64, p: u64) -> Matrix {
        let mut out = self.clone();
        for (o, x) in out.data.iter_mut().zip(&other.data) {
            *o = (*o + c * x) % p;
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn rank(&self, p: u64) -> usize {
        rref(self, p).1.len()
    }

    pub fn is_invertible(&self, p: u64) -> bool {
        self.rows == self.cols && self.rank(p) == self.rows
    }

    /// `{v : v·A = 0}`, as a row-reduced basis.
    pub fn left_nullspace(&self, p: u64) -> Vec<Vector> {
        self.transpose().column_nullspace(p)
    }

    /// `{x : A·x = 0}` (x as a column), basis returned as rows.
    pub fn column_nullspace(&self, p: u64) -> Vec<Vector> {
        let (r, pivots) = rref(self, p);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![0u64; self.cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - r.get(i, f)) % p;
            }
            basis.push(v);
        }
        rref_rows(&basis, self.cols, p)
    }
}

pub fn vec_mul(v: &[u64], m: &Matrix, p: u64) -> Vector {
    let mut out = vec![0u64; m.cols];
    for (k, &a) in v.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            *o = (*o + a * m.get(k, j)) % p;
        }
    }
    out
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Matrix, p: u64) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(piv) = (row..a.rows).find(|&r| a.get(r, col) != 0) else {
            continue;
        };
        if piv != row {
            for j in 0..a.cols {
                let (x, y) = (a.get(piv, j), a.get(row, j));
                a.set(piv, j, y);
                a.set(row, j, x);
            }
        }
        let inv = inv_mod(a.get(row, col), p);
        for j in 0..a.cols {
            a.set(row, j, a.get(row, j) * inv % p);
        }
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let f = a.get(r, col);
            if f == 0 {
                continue;
            }
            for j in 0..a.cols {
                let v = (a.get(r, j) + (p - f) * a.get(row, j)) % p;
                a.set(r, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

fn rref_rows(rows: &[Vector], cols: usize, p: u64) -> Vec<Vector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = rref(&Matrix::from_rows(rows, cols), p);
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Incrementally maintained echelon basis used for spinning and rank checks.
#[derive(Clone, Debug)]
struct Echelon {
    p: u64,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(p: u64) -> Self {
        Echelon {
            p,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn reduce(&self, v: &[u64]) -> Vector {
        let p = self.p;
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = v[pc];
            if f != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + (p - f) * r) % p;
                }
            }
        }
        v
    }

    /// Adds `v` if independent; returns whether it was.
    fn insert(&mut self, v: &[u64]) -> bool {
        let r = self.reduce(v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(r[pc], self.p);
        let r: Vector = r.iter().map(|x| x * inv % self.p).collect();
        self.rows.push(r);
        self.pivots.push(pc);
        true
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// A subspace of `F_p^n`, stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub p: u64,
    pub ambient_dim: usize,
    pub basis: Vec<Vector>,
}

impl Subspace {
    pub fn span(p: u64, ambient_dim: usize, vectors: &[Vector]) -> Self {
        Subspace {
            p,
            ambient_dim,
            basis: rref_rows(vectors, ambient_dim, p),
        }
    }

    pub fn zero(p: u64, ambient_dim: usize) -> Self {
        Subspace {
            p,
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(p: u64, ambient_dim: usize) -> Self {
        Self::span(p, ambient_dim, &Matrix::identity(ambient_dim).row_vectors())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref_rows(&rows, self.ambient_dim, self.p).len() == self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.p, self.ambient_dim, &rows)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// Intersection via the annihilator of the sum of annihilators.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    /// `{v : v·u = 0 for all u in self}`.
    pub fn annihilator(&self) -> Subspace {
        let n = self.ambient_dim;
        if self.basis.is_empty() {
            return Subspace::full(self.p, n);
        }
        let m = Matrix::from_rows(&self.basis, n);
        // v·Bᵀ = 0
        Subspace {
            p: self.p,
            ambient_dim: n,
            basis: m.column_nullspace(self.p),
        }
    }
}

/// A module for a group given by one invertible matrix per group generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpModule {
    pub p: u64,
    pub dim: usize,
    pub actions: Vec<Matrix>,
}

impl FpModule {
    pub fn new(p: u64, dim: usize, actions: Vec<Matrix>) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::Input(format!("{p} is not a supported prime")));
        }
        for a in &actions {
            if a.rows != dim || a.cols != dim {
                return Err(Error::Input("action matrix has the wrong shape".into()));
            }
            if !a.is_invertible(p) {
                return Err(Error::Input("action matrix is not invertible".into()));
            }
        }
        Ok(FpModule { p, dim, actions })
    }

    /// Action on the submodule spanned by `sub` (which must be invariant).
    pub fn submodule(&self, sub: &Subspace) -> FpModule {
        let pivots: Vec<usize> = sub
            .basis
            .iter()
            .map(|r| r.iter().position(|&x| x != 0).unwrap())
            .collect();
        let actions = self
            .actions
            .iter()
            .map(|a| {
                let rows: Vec<Vector> = sub
                    .basis
                    .iter()
                    .map(|b| {
                        let img = vec_mul(b, a, self.p);
                        pivots.iter().map(|&pc| img[pc]).collect()
                    })
                    .collect();
                Matrix::from_rows(&rows, sub.dim())
            })
            .collect();
        FpModule {
            p: self.p,
            dim: sub.dim(),
            actions,
        }
    }

    /// Action on `self / sub`, with the non-pivot standard vectors as basis.
    pub fn quotient(&self, sub: &Subspace) -> FpModule {
        let ech = echelon_of(sub);
        let free: Vec<usize> = (0..self.dim).filter(|c| !ech.pivots.contains(c)).collect();
        let actions = self
            .actions
            .iter()
            .map(|a| {
                let rows: Vec<Vector> = free
                    .iter()
                    .map(|&c| {
                        let r = ech.reduce(a.row(c));
                        free.iter().map(|&c2| r[c2]).collect()
                    })
                    .collect();
                Matrix::from_rows(&rows, free.len())
            })
            .collect();
        FpModule {
            p: self.p,
            dim: free.len(),
            actions,
        }
    }

    fn transposed(&self) -> FpModule {
        FpModule {
            p: self.p,
            dim: self.dim,
            actions: self.actions.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn is_invariant(&self, sub: &Subspace) -> bool {
        sub.basis.iter().all(|b| {
            self.actions
                .iter()
                .all(|a| sub.contains(&vec_mul(b, a, self.p)))
        })
    }
}

fn echelon_of(sub: &Subspace) -> Echelon {
    let mut e = Echelon::new(sub.p);
    for b in &sub.basis {
        e.insert(b);
    }
    e
}

/// Smallest invariant subspace containing `vectors`.
pub fn spin(m: &FpModule, vectors: &[Vector]) -> Subspace {
    let mut ech = Echelon::new(m.p);
    let mut queue = Vec::new();
    for v in vectors {
        if ech.insert(v) {
            queue.push(v.clone());
        }
    }
    let mut k = 0;
    while k < queue.len() && ech.dim() < m.dim {
        let v = queue[k].clone();
        k += 1;
        for a in &m.actions {
            let w = vec_mul(&v, a, m.p);
            if ech.insert(&w) {
                queue.push(w);
            }
        }
    }
    Subspace::span(m.p, m.dim, &ech.rows)
}

/// All nonzero vectors of `span(basis)` with leading coefficient 1, when
/// there are at most `cap` of them.
fn projective_points(basis: &[Vector], p: u64, cap: usize) -> Option<Vec<Vector>> {
    let k = basis.len() as u32;
    let count = (p.checked_pow(k)? - 1) / (p - 1);
    if count as usize > cap {
        return None;
    }
    let n = basis[0].len();
    let mut out = Vec::with_capacity(count as usize);
    // coefficient vectors whose first nonzero entry is 1
    for lead in 0..basis.len() {
        let tail = basis.len() - lead - 1;
        for idx in 0..p.pow(tail as u32) {
            let mut v = basis[lead].clone();
            let mut rest = idx;
            for b in &basis[lead + 1..] {
                let c = rest % p;
                rest /= p;
                if c != 0 {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = (*x + c * y) % p;
                    }
                }
            }
            debug_assert_eq!(v.len(), n);
            out.push(v);
        }
    }
    Some(out)
}

fn random_algebra_element(m: &FpModule, rng: &mut ChaCha8Rng) -> Matrix {
    let p = m.p;
    let mut theta = Matrix::identity(m.dim);
    let c0 = rng.gen_range(0..p);
    for x in theta.data.iter_mut() {
        *x = *x * c0 % p;
    }
    for _ in 0..3 {
        let mut word = Matrix::identity(m.dim);
        for _ in 0..rng.gen_range(1..=4) {
            if m.actions.is_empty() {
                break;
            }
            word = word.mul(&m.actions[rng.gen_range(0..m.actions.len())], p);
        }
        theta = theta.add_scaled(&word, rng.gen_range(1..p), p);
    }
    theta
}

const SPLIT_BUDGET: usize = 200;
const NORTON_VECTOR_CAP: usize = 512;
const EXHAUSTIVE_CAP: u64 = 1 << 20;

/// Finds a proper nonzero submodule, or `None` when `m` is irreducible.
pub fn find_submodule(m: &FpModule, rng: &mut ChaCha8Rng) -> Result<Option<Subspace>> {
    if m.dim <= 1 {
        return Ok(None);
    }
    let p = m.p;
    for e in Matrix::identity(m.dim).row_vectors() {
        let s = spin(m, &[e]);
        if s.dim() < m.dim {
            return Ok(Some(s));
        }
    }
    let dual = m.transposed();
    for _ in 0..SPLIT_BUDGET {
        let theta = random_algebra_element(m, rng);
        let kernel = theta.left_nullspace(p);
        if kernel.is_empty() || kernel.len() == m.dim {
            continue;
        }
        let Some(vs) = projective_points(&kernel, p, NORTON_VECTOR_CAP) else {
            continue;
        };
        let dual_kernel = theta.column_nullspace(p);
        let Some(ws) = projective_points(&dual_kernel, p, NORTON_VECTOR_CAP) else {
            continue;
        };
        for v in &vs {
            let s = spin(m, std::slice::from_ref(v));
            if s.dim() < m.dim {
                return Ok(Some(s));
            }
        }
        for w in &ws {
            let s = spin(&dual, std::slice::from_ref(w));
            if s.dim() < m.dim {
                return Ok(Some(s.annihilator()));
            }
        }
        // Norton: every kernel vector of θ and of θᵀ spins to the whole space.
        return Ok(None);
    }
    match p.checked_pow(m.dim as u32) {
        Some(n) if n <= EXHAUSTIVE_CAP => {
            let all = projective_points(&Matrix::identity(m.dim).row_vectors(), p, n as usize)
                .expect("within cap");
            for v in all {
                let s = spin(m, &[v]);
                if s.dim() < m.dim {
                    return Ok(Some(s));
                }
            }
            Ok(None)
        }
        _ => Err(Error::Resource(format!(
            "could not split a module of dimension {} over F_{p} within the retry budget",
            m.dim
        ))),
    }
}

pub fn is_irreducible(m: &FpModule, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(find_submodule(m, &mut rng)?.is_none())
}

/// Composition factors of `m`, with multiplicity, bottom to top.
pub fn chop(m: &FpModule, seed: u64) -> Result<Vec<FpModule>> {
    if m.dim == 0 {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    chop_into(m, &mut rng, &mut out)?;
    Ok(out)
}

fn chop_into(m: &FpModule, rng: &mut ChaCha8Rng, out: &mut Vec<FpModule>) -> Result<()> {
    match find_submodule(m, rng)? {
        None => out.push(m.clone()),
        Some(sub) => {
            chop_into(&m.submodule(&sub), rng, out)?;
            chop_into(&m.quotient(&sub), rng, out)?;
        }
    }
    Ok(())
}

/// Basis of `Hom(M, S)`; each map is a `dim(M) × dim(S)` matrix `X` with
/// `A_i X = X B_i` for every generator.
pub fn hom_space(m: &FpModule, s: &FpModule) -> Result<Vec<Matrix>> {
    if m.p != s.p || m.actions.len() != s.actions.len() {
        return Err(Error::Input(
            "modules differ in prime or number of acting generators".into(),
        ));
    }
    let p = m.p;
    let (dm, ds) = (m.dim, s.dim);
    let unknowns = dm * ds;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut eqs = Vec::new();
    for (a, b) in m.actions.iter().zip(&s.actions) {
        for r in 0..dm {
            for c in 0..ds {
                let mut row = vec![0u64; unknowns];
                for k in 0..dm {
                    row[k * ds + c] = (row[k * ds + c] + a.get(r, k)) % p;
                }
                for k in 0..ds {
                    row[r * ds + k] = (row[r * ds + k] + p - b.get(k, c)) % p;
                }
                eqs.push(row);
            }
        }
    }
    let sols = if eqs.is_empty() {
        Matrix::identity(unknowns).row_vectors()
    } else {
        Matrix::from_rows(&eqs, unknowns).column_nullspace(p)
    };
    Ok(sols
        .into_iter()
        .map(|v| {
            let mut x = Matrix::zero(dm, ds);
            x.data.copy_from_slice(&v);
            x
        })
        .collect())
}

/// Representatives of the distinct isomorphism types among simple modules.
fn distinct_types(factors: Vec<FpModule>) -> Result<Vec<FpModule>> {
    let mut types: Vec<FpModule> = Vec::new();
    for f in factors {
        let mut seen = false;
        for t in &types {
            if t.dim == f.dim && !hom_space(t, &f)?.is_empty() {
                seen = true;
                break;
            }
        }
        if !seen {
            types.push(f);
        }
    }
    Ok(types)
}

/// Intersection of all maximal submodules, computed as the common kernel of
/// all homomorphisms onto the composition factor types.
pub fn radical(m: &FpModule, seed: u64) -> Result<Subspace> {
    let p = m.p;
    if m.dim == 0 {
        return Ok(Subspace::zero(p, 0));
    }
    let types = distinct_types(chop(m, seed)?)?;
    let mut columns: Vec<Vector> = Vec::new();
    for s in &types {
        for phi in hom_space(m, s)? {
            let t = phi.transpose();
            columns.extend(t.row_vectors());
        }
    }
    if columns.is_empty() {
        return Ok(Subspace::full(p, m.dim));
    }
    // kernel: v with v·φ = 0 for all φ, i.e. v orthogonal to every column
    let cols = Subspace::span(p, m.dim, &columns);
    Ok(cols.annihilator())
}

/// Splits a semisimple module into minimal submodules whose direct sum is
/// the whole space.
pub fn semisimple_decompose(m: &FpModule, seed: u64) -> Result<Vec<Subspace>> {
    let p = m.p;
    if !radical(m, seed)?.basis.is_empty() {
        return Err(Error::Input("module is not semisimple".into()));
    }
    let types = distinct_types(chop(m, seed)?)?;
    let mut running = Echelon::new(p);
    let mut parts = Vec::new();
    for s in &types {
        for phi in hom_space(s, m)? {
            if running.dim() == m.dim {
                break;
            }
            let img = Subspace::span(p, m.dim, &phi.row_vectors());
            let mut trial = running.clone();
            if img.basis.iter().all(|v| trial.insert(v)) {
                running = trial;
                parts.push(img);
            }
        }
    }
    if running.dim() != m.dim {
        return Err(Error::Internal(
            "minimal submodules do not exhaust a semisimple module".into(),
        ));
    }
    Ok(parts)
}

/// An elementary abelian section `H/K` of `G` realized as an `F_p G`-module,
/// with the bookkeeping to move between vectors and group elements.
#[derive(Clone, Debug)]
pub struct SectionModule {
    pub module: FpModule,
    /// Elements of `H` whose images form a basis of `H/K`.
    pub basis_pullback: Vec<Permutation>,
    pub section: NormalSection,
    /// `K = L_0 < L_1 < ... < L_d = H`, `L_i = ⟨K, b_1..b_i⟩`.
    ladder: Vec<PermGroup>,
}

impl SectionModule {
    /// Coordinates of `x ∈ H` modulo `K`.
    pub fn coordinates(&self, x: &Permutation) -> Result<Vector> {
        let p = self.module.p;
        let d = self.module.dim;
        let mut v = vec![0u64; d];
        let mut cur = x.clone();
        for i in (0..d).rev() {
            let b_inv = self.basis_pullback[i].inverse();
            let mut found = false;
            for c in 0..p {
                if self.ladder[i].contains(&cur) {
                    v[i] = c;
                    found = true;
                    break;
                }
                cur = cur.mul(&b_inv);
            }
            if !found {
                return Err(Error::Input(format!("{x} does not lie in the section top")));
            }
        }
        Ok(v)
    }

    /// `∏ b_i^{v_i}`.
    pub fn pullback(&self, v: &[u64]) -> Permutation {
        let mut acc = self.section.ambient.identity();
        for (b, &c) in self.basis_pullback.iter().zip(v) {
            acc = acc.mul(&b.pow(c));
        }
        acc
    }

    /// Preimage in `G` of the subgroup corresponding to `sub`.
    pub fn subgroup_of(&self, sub: &Subspace) -> PermGroup {
        let gens: Vec<_> = sub.basis.iter().map(|v| self.pullback(v)).collect();
        self.section.bottom.extended(&gens)
    }
}

/// Realizes `H/K` as an `F_p G`-module (one matrix per generator of `G`).
pub fn section_to_module(
    g: &PermGroup,
    h: &PermGroup,
    k: &PermGroup,
    p: u64,
) -> Result<SectionModule> {
    if !is_prime(p) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    let section = NormalSection::new(g.clone(), h.clone(), k.clone())?;
    if h.order() == k.order() {
        return Err(Error::Input("section is trivial (dimension 0)".into()));
    }
    if !h.agemo_derived(p, g)?.is_subgroup_of(k) {
        return Err(Error::Input(format!(
            "section is not an elementary abelian {p}-group"
        )));
    }
    let mut ladder = vec![k.clone()];
    let mut basis = Vec::new();
    for x in h.generators() {
        let top = ladder.last().unwrap();
        if !top.contains(x) {
            ladder.push(top.extended(std::slice::from_ref(x)));
            basis.push(x.clone());
        }
    }
    let d = basis.len();
    let mut sm = SectionModule {
        module: FpModule {
            p,
            dim: d,
            actions: Vec::new(),
        },
        basis_pullback: basis,
        section,
        ladder,
    };
    let mut actions = Vec::new();
    for gen in g.generators() {
        let rows = sm
            .basis_pullback
            .iter()
            .map(|b| sm.coordinates(&b.conjugate(gen)))
            .collect::<Result<Vec<_>>>()?;
        actions.push(Matrix::from_rows(&rows, d));
    }
    sm.module.actions = actions;
    Ok(sm)
}

/// Draws a random module with invertible action matrices (testing aid).
pub fn random_module(p: u64, dim: usize, gens: usize, seed: u64) -> FpModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut actions = Vec::new();
    while actions.len() < gens {
        let mut m = Matrix::zero(dim, dim);
        // bias towards block-triangular shapes so that radicals are often nonzero
        let triangular = rng.gen_bool(0.5);
        for i in 0..dim {
            for j in 0..dim {
                if triangular && j < i {
                    continue;
                }
                m.set(i, j, rng.gen_range(0..p));
            }
        }
        if m.is_invertible(p) {
            actions.push(m);
        }
    }
    FpModule { p, dim, actions }
}

pub fn module_seed(params: &Params, tag: u64) -> u64 {
    params.stream(0x30d0_0000 ^ tag)
}
