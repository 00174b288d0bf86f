use thiserror::Error;

use super::map::PolynomialMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("structured maps need n >= 3, got n = {n}")]
    TooSmall { n: usize },
    #[error("component {component} depends on forbidden variable x{variable}")]
    ForbiddenVariable { component: usize, variable: usize },
}

/// Shape data of `H = (u(x,y), u2(x,y,x3), ..., u_{n-1}(x,y,x_n), u_n(x,y))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuredShape {
    pub n: usize,
    /// First index `r >= 3` (one-based) whose component is free of `x_{r+1}`; `n` if none earlier.
    pub r: usize,
    pub u_y_zero: bool,
    pub u2_x3_zero: bool,
}

/// Variables (zero-based) component `i` (zero-based) may depend on.
pub(crate) fn allowed_variables(n: usize, i: usize) -> Vec<usize> {
    if i == 0 || i == n - 1 {
        vec![0, 1]
    } else {
        vec![0, 1, i + 1]
    }
}

pub fn validate_structured_shape(h: &PolynomialMap) -> Result<StructuredShape, ShapeError> {
    let n = h.dim();
    if n < 3 {
        return Err(ShapeError::TooSmall { n });
    }
    for (i, c) in h.components().iter().enumerate() {
        let allowed = allowed_variables(n, i);
        if let Some(v) = c.support().into_iter().find(|v| !allowed.contains(v)) {
            return Err(ShapeError::ForbiddenVariable { component: i + 1, variable: v + 1 });
        }
    }
    // component i (one-based, 3 <= i < n) is u_i(x, y, x_{i+1})
    let r = (3..n).find(|&i| !h.component(i - 1).involves(i)).unwrap_or(n);
    Ok(StructuredShape {
        n,
        r,
        u_y_zero: !h.component(0).involves(1),
        u2_x3_zero: !h.component(1).involves(2),
    })
}
