use crate::linalg::{matrix_unit, unvec_col, vec_col, CMatrix};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapTag {
    KrausBacked,
    /// Built from the transpose, hence positive but not necessarily CP.
    TransposeComponent,
    Custom,
}

/// Linear map `M_in → M_out` stored as its `out² × in²` column-stacking matrix.
#[derive(Clone, Debug)]
pub struct LinearMatrixMap {
    in_dim: usize,
    out_dim: usize,
    action: CMatrix,
    tag: MapTag,
    hermiticity_preserving: bool,
}

impl LinearMatrixMap {
    pub fn from_action(in_dim: usize, out_dim: usize, action: CMatrix, tag: MapTag) -> Result<Self> {
        if action.nrows() != out_dim * out_dim || action.ncols() != in_dim * in_dim {
            return Err(Error::Shape(format!(
                "action is {}x{}, expected {}x{}",
                action.nrows(),
                action.ncols(),
                out_dim * out_dim,
                in_dim * in_dim
            )));
        }
        let mut map = Self { in_dim, out_dim, action, tag, hermiticity_preserving: false };
        map.hermiticity_preserving = map.check_hermiticity_preserving();
        Ok(map)
    }

    /// Tabulates `f` on the matrix units `E_ij`.
    pub fn from_fn(in_dim: usize, out_dim: usize, tag: MapTag, f: impl Fn(&CMatrix) -> CMatrix) -> Result<Self> {
        let mut action = CMatrix::zeros(out_dim * out_dim, in_dim * in_dim);
        for j in 0..in_dim {
            for i in 0..in_dim {
                let img = f(&matrix_unit(in_dim, i, j));
                if img.nrows() != out_dim || img.ncols() != out_dim {
                    return Err(Error::Shape("map image has the wrong shape".into()));
                }
                action.set_column(i + j * in_dim, &vec_col(&img));
            }
        }
        Self::from_action(in_dim, out_dim, action, tag)
    }

    fn check_hermiticity_preserving(&self) -> bool {
        let scale = self.action.norm().max(1.0);
        (0..self.in_dim).all(|i| {
            (0..self.in_dim).all(|j| {
                let a = self.apply_unchecked(&matrix_unit(self.in_dim, i, j));
                let b = self.apply_unchecked(&matrix_unit(self.in_dim, j, i));
                (a.adjoint() - b).norm() <= 1e-10 * scale
            })
        })
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn action(&self) -> &CMatrix {
        &self.action
    }

    pub fn tag(&self) -> MapTag {
        self.tag
    }

    pub fn is_hermiticity_preserving(&self) -> bool {
        self.hermiticity_preserving
    }

    fn apply_unchecked(&self, x: &CMatrix) -> CMatrix {
        unvec_col(&(&self.action * vec_col(x)), self.out_dim, self.out_dim)
    }

    pub fn apply(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.nrows() != self.in_dim || x.ncols() != self.in_dim {
            return Err(Error::Shape(format!("input must be {0}x{0}", self.in_dim)));
        }
        Ok(self.apply_unchecked(x))
    }

    /// Hilbert–Schmidt adjoint: the conjugate transpose of the action.
    pub fn adjoint(&self) -> LinearMatrixMap {
        Self {
            in_dim: self.out_dim,
            out_dim: self.in_dim,
            action: self.action.adjoint(),
            tag: self.tag,
            hermiticity_preserving: self.hermiticity_preserving,
        }
    }

    /// `(id_k ⊗ Φ)(Z)` for `Z` on `C^k ⊗ C^in`, block by block.
    pub fn apply_ampliated(&self, z: &CMatrix, k: usize) -> Result<CMatrix> {
        let (n, m) = (self.in_dim, self.out_dim);
        if z.nrows() != k * n || z.ncols() != k * n {
            return Err(Error::Shape(format!("ampliated input must be {0}x{0}", k * n)));
        }
        let mut out = CMatrix::zeros(k * m, k * m);
        for a in 0..k {
            for b in 0..k {
                let block = z.view((a * n, b * n), (n, n)).into_owned();
                out.view_mut((a * m, b * m), (m, m)).copy_from(&self.apply_unchecked(&block));
            }
        }
        Ok(out)
    }
}
