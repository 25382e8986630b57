use crate::combinat::Partition;
use crate::GedError;

/// Schubert rectangle: partitions with at most `rows` rows and parts at most
/// `cols` index the Schubert basis of one Grassmannian factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub rows: u32,
    pub cols: u32,
}

impl Rect {
    pub fn contains(&self, p: &Partition) -> bool {
        p.fits_in(self.rows, self.cols)
    }

    pub fn full(&self) -> Partition {
        Partition::rectangle(self.rows, self.cols)
    }

    pub fn complement(&self, p: &Partition) -> Option<Partition> {
        p.complement_in(self.rows, self.cols)
    }

    pub fn dim(&self) -> u32 {
        self.rows * self.cols
    }
}

/// The base `B = Gr_{N-k}(V) x Gr_k(W)` with `dim V = n`, `dim W = m` and
/// width `k`: everything downstream depends on the support of the activation
/// only through these three integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProductCtx {
    /// dimension of the source space (`N_S`)
    pub n: u32,
    /// dimension of the target space `W`
    pub m: u32,
    /// width / rank bound
    pub k: u32,
}

impl ProductCtx {
    pub fn new(n: u32, m: u32, k: u32) -> Result<Self, GedError> {
        if n == 0 || m == 0 {
            return Err(GedError::invalid("dimensions must be positive"));
        }
        if k == 0 || k > n.min(m) {
            return Err(GedError::invalid(format!(
                "rank {k} must satisfy 1 <= k <= min({n}, {m})"
            )));
        }
        Ok(ProductCtx { n, m, k })
    }

    /// Schubert rectangle of the first factor `Gr_{N-k}(C^N)`.
    pub fn rect1(&self) -> Rect {
        Rect {
            rows: self.n - self.k,
            cols: self.k,
        }
    }

    /// Schubert rectangle of the second factor `Gr_k(C^m)`.
    pub fn rect2(&self) -> Rect {
        Rect {
            rows: self.k,
            cols: self.m - self.k,
        }
    }

    /// `dim B = k(N-k) + k(m-k)`.
    pub fn dim_b(&self) -> u32 {
        self.rect1().dim() + self.rect2().dim()
    }

    /// Dimension of the projective bundle `Z = P(Q^v ⊗ U_k)` over `B`.
    pub fn dim_z(&self) -> u32 {
        self.dim_b() + self.k * self.k - 1
    }

    /// Key of the point class.
    pub fn top_key(&self) -> (Partition, Partition) {
        (self.rect1().full(), self.rect2().full())
    }

    pub fn key_fits(&self, key: &(Partition, Partition)) -> bool {
        self.rect1().contains(&key.0) && self.rect2().contains(&key.1)
    }

    /// Poincare-dual key inside the product, when `key` fits.
    pub fn complement_key(&self, key: &(Partition, Partition)) -> Option<(Partition, Partition)> {
        Some((
            self.rect1().complement(&key.0)?,
            self.rect2().complement(&key.1)?,
        ))
    }
}
