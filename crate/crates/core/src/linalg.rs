//! Dense linear algebra over `F_p` for the finite module backend.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<u32>>,
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u32
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![0; cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = 1;
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (row, &v) in m.data.iter_mut().zip(c) {
                row[j] = v;
            }
        }
        m
    }

    pub fn apply(&self, v: &[u32], p: u32) -> Vec<u32> {
        self.data
            .iter()
            .map(|row| (row.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p as u64) as u32)
            .collect()
    }

    pub fn mul(&self, other: &Matrix, p: u32) -> Matrix {
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i][k] as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] = ((out.data[i][j] as u64 + a * other.data[k][j] as u64) % p as u64) as u32;
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize, p: u32) -> Matrix {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = self.mul(&acc, p);
        }
        acc
    }

    /// Null space as a subspace of `F_p^cols`.
    pub fn kernel(&self, p: u32) -> Subspace {
        let mut rows = self.data.clone();
        let pivots = rref(&mut rows, self.cols, p);
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.iter().any(|&(_, c)| c == free) {
                continue;
            }
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for &(r, c) in &pivots {
                v[c] = (p - rows[r][free]) % p;
            }
            basis.push(v);
        }
        Subspace::span(p, self.cols, basis)
    }
}

/// Row-reduces in place; returns (row, pivot column) pairs.
fn rref(rows: &mut Vec<Vec<u32>>, cols: usize, p: u32) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p) as u64;
        for x in rows[r].iter_mut() {
            *x = (*x as u64 * inv % p as u64) as u32;
        }
        let pivot = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c] as u64;
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    let sub = f * y as u64 % p as u64;
                    *x = ((*x as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A subspace of `F_p^n` in reduced row echelon form, so equal subspaces
/// have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    p: u32,
    n: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(p: u32, n: usize, vectors: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut rows: Vec<Vec<u32>> = vectors.into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
        let piv = rref(&mut rows, n, p);
        Subspace {
            p,
            n,
            rows,
            pivots: piv.into_iter().map(|(_, c)| c).collect(),
        }
    }

    pub fn zero(p: u32, n: usize) -> Self {
        Self::span(p, n, Vec::new())
    }

    pub fn full(p: u32, n: usize) -> Self {
        Self::span(
            p,
            n,
            (0..n).map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            }),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Residue of `v` after clearing pivot coordinates; zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut out = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = out[c] as u64;
            if f != 0 {
                for j in 0..self.n {
                    out[j] = ((out[j] as u64 + p - f * row[j] as u64 % p) % p) as u32;
                }
            }
        }
        out
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.p, self.n, self.rows.iter().chain(&other.rows).cloned())
    }

    /// Linear forms vanishing on the subspace, as rows.
    fn annihilator_rows(&self) -> Vec<Vec<u32>> {
        let m = Matrix {
            rows: self.rows.len(),
            cols: self.n,
            data: self.rows.clone(),
        };
        m.kernel(self.p).rows
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // keep vectors of self killed by the equations of other
        let eqs = other.annihilator_rows();
        if eqs.is_empty() {
            return self.clone();
        }
        let basis = &self.rows;
        let m = Matrix::from_columns(self.n, basis);
        let e = Matrix {
            rows: eqs.len(),
            cols: self.n,
            data: eqs,
        };
        let coeffs = e.mul(&m, self.p).kernel(self.p);
        Subspace::span(self.p, self.n, coeffs.rows.iter().map(|c| m.apply(c, self.p)))
    }

    /// `{ v : A v ∈ self }`.
    pub fn preimage(&self, a: &Matrix) -> Subspace {
        let eqs = self.annihilator_rows();
        if eqs.is_empty() {
            return Subspace::full(self.p, a.cols);
        }
        let e = Matrix {
            rows: eqs.len(),
            cols: self.n,
            data: eqs,
        };
        e.mul(a, self.p).kernel(self.p)
    }

    /// `A(self)`.
    pub fn image(&self, a: &Matrix) -> Subspace {
        Subspace::span(self.p, a.rows, self.rows.iter().map(|r| a.apply(r, self.p)))
    }

    /// All vectors of the subspace, in a fixed order.
    pub fn elements(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; self.n]];
        for row in &self.rows {
            let mut next = Vec::with_capacity(out.len() * self.p as usize);
            for v in &out {
                for c in 0..self.p {
                    let w: Vec<u32> = v
                        .iter()
                        .zip(row)
                        .map(|(&a, &b)| ((a as u64 + c as u64 * b as u64) % self.p as u64) as u32)
                        .collect();
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
}
