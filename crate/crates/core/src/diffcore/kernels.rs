//! Dense numeric kernels behind the graph operations.
//!
//! Every kernel comes as a forward function plus the matching vector-Jacobian
//! product used by the backward pass. All loops are plain sequential f64 so
//! repeated evaluation is bit-identical.

use crate::error::{Error, Result};

use super::tensor::Tensor;

fn shape_err(op: &'static str, detail: String) -> Error {
    Error::Shape { op, detail }
}

// ---------------------------------------------------------------------------
// matmul

/// Matrix/vector product.
///
/// Supported operand ranks: (2,2) -> 2, (2,1) -> 1, (1,2) -> 1, (1,1) -> scalar.
pub fn matmul_fwd(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    match (a.rank(), b.rank()) {
        (2, 2) => {
            let (m, k) = (a.shape()[0], a.shape()[1]);
            let (k2, n) = (b.shape()[0], b.shape()[1]);
            if k != k2 {
                return Err(shape_err("matmul", format!("{:?} x {:?}", a.shape(), b.shape())));
            }
            let mut out = Tensor::zeros(&[m, n]);
            mat_mat(a.data(), b.data(), out.data_mut(), m, k, n);
            Ok(out)
        }
        (2, 1) => {
            let (m, k) = (a.shape()[0], a.shape()[1]);
            if k != b.shape()[0] {
                return Err(shape_err("matmul", format!("{:?} x {:?}", a.shape(), b.shape())));
            }
            let mut out = Tensor::zeros(&[m]);
            for i in 0..m {
                let mut acc = 0.0;
                for j in 0..k {
                    acc += a.data()[i * k + j] * b.data()[j];
                }
                out.data_mut()[i] = acc;
            }
            Ok(out)
        }
        (1, 2) => {
            let k = a.shape()[0];
            let (k2, n) = (b.shape()[0], b.shape()[1]);
            if k != k2 {
                return Err(shape_err("matmul", format!("{:?} x {:?}", a.shape(), b.shape())));
            }
            let mut out = Tensor::zeros(&[n]);
            for j in 0..k {
                let av = a.data()[j];
                for c in 0..n {
                    out.data_mut()[c] += av * b.data()[j * n + c];
                }
            }
            Ok(out)
        }
        (1, 1) => {
            if a.shape()[0] != b.shape()[0] {
                return Err(shape_err("matmul", format!("{:?} x {:?}", a.shape(), b.shape())));
            }
            let dot: f64 = a.data().iter().zip(b.data()).map(|(x, y)| x * y).sum();
            Ok(Tensor::scalar(dot))
        }
        _ => Err(shape_err(
            "matmul",
            format!("unsupported ranks {:?} x {:?}", a.shape(), b.shape()),
        )),
    }
}

/// d(a@b) pulled back onto both operands.
pub fn matmul_bwd(a: &Tensor, b: &Tensor, gout: &Tensor) -> (Tensor, Tensor) {
    // Promote vectors to matrices, reuse the 2-D rule, demote after.
    let (ar, br) = (a.rank(), b.rank());
    let a2 = promote(a, ar == 1, true);
    let b2 = promote(b, br == 1, false);
    let g2 = match (ar, br) {
        (2, 2) => gout.clone(),
        (2, 1) => gout.reshaped(vec![gout.numel(), 1]).unwrap(),
        (1, 2) => gout.reshaped(vec![1, gout.numel()]).unwrap(),
        (1, 1) => gout.reshaped(vec![1, 1]).unwrap(),
        _ => unreachable!(),
    };
    // ga = g @ b^T ; gb = a^T @ g
    let ga = matmul_fwd(&g2, &b2.transposed().unwrap()).unwrap();
    let gb = matmul_fwd(&a2.transposed().unwrap(), &g2).unwrap();
    (
        ga.reshaped(a.shape().to_vec()).unwrap(),
        gb.reshaped(b.shape().to_vec()).unwrap(),
    )
}

fn promote(t: &Tensor, is_vec: bool, row_side: bool) -> Tensor {
    if !is_vec {
        return t.clone();
    }
    // left operand vector acts as a row [1,k]; right operand as a column [k,1]
    if row_side {
        t.reshaped(vec![1, t.numel()]).unwrap()
    } else {
        t.reshaped(vec![t.numel(), 1]).unwrap()
    }
}

fn mat_mat(a: &[f64], b: &[f64], out: &mut [f64], m: usize, k: usize, n: usize) {
    for i in 0..m {
        for p in 0..k {
            let av = a[i * k + p];
            if av == 0.0 {
                continue;
            }
            let brow = &b[p * n..(p + 1) * n];
            let orow = &mut out[i * n..(i + 1) * n];
            for c in 0..n {
                orow[c] += av * brow[c];
            }
        }
    }
}

// ---------------------------------------------------------------------------
// kron_structured_matvec

/// Apply a Kronecker product `(A ⊗ B)` to a vector or to each column of a
/// matrix without materializing the product.
///
/// `A` is `p x q`, `B` is `r x s`; the right-hand side has `q*s` rows in the
/// row-major (channel-major) layout where index `j*s + l` holds entry `(j, l)`
/// of the reshaped `q x s` block. Each column is computed as `A · M · Bᵀ`,
/// flattened row-major.
pub fn kron_matvec_fwd(a: &Tensor, b: &Tensor, v: &Tensor) -> Result<Tensor> {
    if a.rank() != 2 || b.rank() != 2 {
        return Err(shape_err(
            "kron_structured_matvec",
            format!("factors must be matrices, got {:?} and {:?}", a.shape(), b.shape()),
        ));
    }
    let (p, q) = (a.shape()[0], a.shape()[1]);
    let (r, s) = (b.shape()[0], b.shape()[1]);
    let (rows, cols, vec_rhs) = match v.rank() {
        1 => (v.shape()[0], 1, true),
        2 => (v.shape()[0], v.shape()[1], false),
        _ => {
            return Err(shape_err(
                "kron_structured_matvec",
                format!("rhs must be vector or matrix, got {:?}", v.shape()),
            ))
        }
    };
    if rows != q * s {
        return Err(shape_err(
            "kron_structured_matvec",
            format!("rhs has {} rows, expected {}*{}={}", rows, q, s, q * s),
        ));
    }
    let mut out = if vec_rhs {
        Tensor::zeros(&[p * r])
    } else {
        Tensor::zeros(&[p * r, cols])
    };
    let mut m = vec![0.0; q * s]; // current column reshaped q x s
    let mut am = vec![0.0; p * s];
    for c in 0..cols {
        for (j, slot) in m.iter_mut().enumerate() {
            *slot = v.data()[j * cols + c];
        }
        // A (p x q) * M (q x s)
        am.iter_mut().for_each(|x| *x = 0.0);
        mat_mat(a.data(), &m, &mut am, p, q, s);
        // (A M) * B^T: out[(i, k)] = sum_l am[i, l] * B[k, l]
        for i in 0..p {
            for k in 0..r {
                let mut acc = 0.0;
                for l in 0..s {
                    acc += am[i * s + l] * b.data()[k * s + l];
                }
                out.data_mut()[(i * r + k) * cols + c] = acc;
            }
        }
    }
    Ok(out)
}

pub fn kron_matvec_bwd(a: &Tensor, b: &Tensor, v: &Tensor, gout: &Tensor) -> (Tensor, Tensor, Tensor) {
    let (p, q) = (a.shape()[0], a.shape()[1]);
    let (r, s) = (b.shape()[0], b.shape()[1]);
    let cols = if v.rank() == 1 { 1 } else { v.shape()[1] };
    let mut ga = Tensor::zeros(&[p, q]);
    let mut gb = Tensor::zeros(&[r, s]);
    let mut gv = Tensor::zeros(v.shape());
    let mut m = vec![0.0; q * s];
    let mut h = vec![0.0; p * r];
    for c in 0..cols {
        for (j, slot) in m.iter_mut().enumerate() {
            *slot = v.data()[j * cols + c];
        }
        for (i, slot) in h.iter_mut().enumerate() {
            *slot = gout.data()[i * cols + c];
        }
        // For C = A M B^T with H = dL/dC:
        //   dA += H B M^T, dB += H^T A M, dM = A^T H B
        let mut hb = vec![0.0; p * s]; // H (p x r) * B (r x s)
        mat_mat(&h, b.data(), &mut hb, p, r, s);
        for i in 0..p {
            for j in 0..q {
                let mut acc = 0.0;
                for l in 0..s {
                    acc += hb[i * s + l] * m[j * s + l];
                }
                ga.data_mut()[i * q + j] += acc;
            }
        }
        let mut am = vec![0.0; p * s]; // A M
        mat_mat(a.data(), &m, &mut am, p, q, s);
        for k in 0..r {
            for l in 0..s {
                let mut acc = 0.0;
                for i in 0..p {
                    acc += h[i * r + k] * am[i * s + l];
                }
                gb.data_mut()[k * s + l] += acc;
            }
        }
        // dM = A^T H B = A^T (H B)
        for j in 0..q {
            for l in 0..s {
                let mut acc = 0.0;
                for i in 0..p {
                    acc += a.data()[i * q + j] * hb[i * s + l];
                }
                gv.data_mut()[(j * s + l) * cols + c] += acc;
            }
        }
    }
    (ga, gb, gv)
}

// ---------------------------------------------------------------------------
// causal dilated convolution

/// Causal dilated 1-D convolution with left zero padding.
///
/// `x` is `[c_in, t]`, `kernel` is `[c_out, c_in, w]`; the output keeps the
/// input length and `out[o, t]` taps `x[c, t - w*dilation]`, so position `t`
/// only sees the present and the past.
pub fn causal_conv_fwd(x: &Tensor, kernel: &Tensor, dilation: usize) -> Result<Tensor> {
    if x.rank() != 2 || kernel.rank() != 3 {
        return Err(shape_err(
            "causal_dilated_conv",
            format!("expected x [c_in,t] and kernel [c_out,c_in,w], got {:?}, {:?}", x.shape(), kernel.shape()),
        ));
    }
    let (c_in, t_len) = (x.shape()[0], x.shape()[1]);
    let (c_out, kc_in, width) = (kernel.shape()[0], kernel.shape()[1], kernel.shape()[2]);
    if kc_in != c_in {
        return Err(shape_err(
            "causal_dilated_conv",
            format!("kernel expects {} input channels, x has {}", kc_in, c_in),
        ));
    }
    if dilation == 0 {
        return Err(shape_err("causal_dilated_conv", "dilation must be >= 1".into()));
    }
    let mut out = Tensor::zeros(&[c_out, t_len]);
    for o in 0..c_out {
        for c in 0..c_in {
            let krow = &kernel.data()[(o * c_in + c) * width..(o * c_in + c + 1) * width];
            let xrow = &x.data()[c * t_len..(c + 1) * t_len];
            let orow = &mut out.data_mut()[o * t_len..(o + 1) * t_len];
            for (w, &kv) in krow.iter().enumerate() {
                if kv == 0.0 {
                    continue;
                }
                let shift = w * dilation;
                for t in shift..t_len {
                    orow[t] += kv * xrow[t - shift];
                }
            }
        }
    }
    Ok(out)
}

pub fn causal_conv_bwd(x: &Tensor, kernel: &Tensor, dilation: usize, gout: &Tensor) -> (Tensor, Tensor) {
    let (c_in, t_len) = (x.shape()[0], x.shape()[1]);
    let (c_out, _, width) = (kernel.shape()[0], kernel.shape()[1], kernel.shape()[2]);
    let mut gx = Tensor::zeros(&[c_in, t_len]);
    let mut gk = Tensor::zeros(kernel.shape());
    for o in 0..c_out {
        let grow = &gout.data()[o * t_len..(o + 1) * t_len];
        for c in 0..c_in {
            let xrow = &x.data()[c * t_len..(c + 1) * t_len];
            for w in 0..width {
                let shift = w * dilation;
                let kv = kernel.data()[(o * c_in + c) * width + w];
                let mut acc = 0.0;
                for t in shift..t_len {
                    acc += grow[t] * xrow[t - shift];
                    gx.data_mut()[c * t_len + t - shift] += grow[t] * kv;
                }
                gk.data_mut()[(o * c_in + c) * width + w] += acc;
            }
        }
    }
    (gx, gk)
}

// ---------------------------------------------------------------------------
// layer norm

pub const LAYER_NORM_EPS: f64 = 1e-8;

/// Layer normalization over the feature (row) dimension, independently per
/// time step (column), with population variance.
pub fn layer_norm_fwd(x: &Tensor, gain: &Tensor, bias: &Tensor) -> Result<Tensor> {
    if x.rank() != 2 || gain.rank() != 1 || bias.rank() != 1 {
        return Err(shape_err(
            "layer_norm",
            format!("expected x [c,t], gain [c], bias [c]; got {:?}, {:?}, {:?}", x.shape(), gain.shape(), bias.shape()),
        ));
    }
    let (c, t_len) = (x.shape()[0], x.shape()[1]);
    if gain.shape()[0] != c || bias.shape()[0] != c {
        return Err(shape_err(
            "layer_norm",
            format!("gain/bias length must equal feature count {}", c),
        ));
    }
    let mut out = Tensor::zeros(&[c, t_len]);
    for t in 0..t_len {
        let (mean, var) = column_moments(x, t);
        let inv_std = 1.0 / (var + LAYER_NORM_EPS).sqrt();
        for r in 0..c {
            let xhat = (x.at2(r, t) - mean) * inv_std;
            out.set2(r, t, gain.data()[r] * xhat + bias.data()[r]);
        }
    }
    Ok(out)
}

pub fn layer_norm_bwd(x: &Tensor, gain: &Tensor, gout: &Tensor) -> (Tensor, Tensor, Tensor) {
    let (c, t_len) = (x.shape()[0], x.shape()[1]);
    let cf = c as f64;
    let mut gx = Tensor::zeros(&[c, t_len]);
    let mut ggain = Tensor::zeros(&[c]);
    let mut gbias = Tensor::zeros(&[c]);
    for t in 0..t_len {
        let (mean, var) = column_moments(x, t);
        let inv_std = 1.0 / (var + LAYER_NORM_EPS).sqrt();
        let mut sum_dxhat = 0.0;
        let mut sum_dxhat_xhat = 0.0;
        let mut xhat = vec![0.0; c];
        let mut dxhat = vec![0.0; c];
        for r in 0..c {
            xhat[r] = (x.at2(r, t) - mean) * inv_std;
            dxhat[r] = gout.at2(r, t) * gain.data()[r];
            sum_dxhat += dxhat[r];
            sum_dxhat_xhat += dxhat[r] * xhat[r];
            ggain.data_mut()[r] += gout.at2(r, t) * xhat[r];
            gbias.data_mut()[r] += gout.at2(r, t);
        }
        for r in 0..c {
            let v = (dxhat[r] - sum_dxhat / cf - xhat[r] * sum_dxhat_xhat / cf) * inv_std;
            gx.set2(r, t, v);
        }
    }
    (gx, ggain, gbias)
}

fn column_moments(x: &Tensor, t: usize) -> (f64, f64) {
    let c = x.shape()[0];
    let cf = c as f64;
    let mut mean = 0.0;
    for r in 0..c {
        mean += x.at2(r, t);
    }
    mean /= cf;
    let mut var = 0.0;
    for r in 0..c {
        let d = x.at2(r, t) - mean;
        var += d * d;
    }
    (mean, var / cf)
}

// ---------------------------------------------------------------------------
// cholesky and triangular solves

/// Lower Cholesky factor of a symmetric positive definite matrix.
///
/// Only the lower triangle of `a` is read. On failure the error carries the
/// index of the first non-positive pivot.
pub fn cholesky_fwd(a: &Tensor) -> Result<Tensor> {
    if a.rank() != 2 || a.shape()[0] != a.shape()[1] {
        return Err(shape_err("cholesky", format!("expected square matrix, got {:?}", a.shape())));
    }
    let n = a.shape()[0];
    let mut l = Tensor::zeros(&[n, n]);
    for i in 0..n {
        for j in 0..=i {
            let mut acc = a.at2(i, j);
            for k in 0..j {
                acc -= l.at2(i, k) * l.at2(j, k);
            }
            if i == j {
                if acc <= 0.0 || !acc.is_finite() {
                    return Err(Error::NotPositiveDefinite { pivot: i });
                }
                l.set2(i, j, acc.sqrt());
            } else {
                l.set2(i, j, acc / l.at2(j, j));
            }
        }
    }
    Ok(l)
}

/// Pullback of the Cholesky factorization.
///
/// Uses the closed-form expression `sym(L^{-T} Φ(Lᵀ L̄) L^{-1})` with Φ taking
/// the lower triangle and halving the diagonal. Because the forward pass reads
/// only the lower triangle of the input, the symmetric-matrix gradient is
/// folded onto the lower triangle (off-diagonal entries doubled) and the upper
/// triangle receives zero.
pub fn cholesky_bwd(l: &Tensor, gout: &Tensor) -> Tensor {
    let n = l.shape()[0];
    // S = L^T gout, lower triangle with halved diagonal.
    let lt = l.transposed().unwrap();
    let s_full = matmul_fwd(&lt, gout).unwrap();
    let mut phi = Tensor::zeros(&[n, n]);
    for i in 0..n {
        for j in 0..=i {
            let v = s_full.at2(i, j);
            phi.set2(i, j, if i == j { 0.5 * v } else { v });
        }
    }
    // Solve L^T W = Phi  => W = L^{-T} Phi, then L^T Y^T = W^T ... equivalently
    // compute Y = L^{-T} Phi L^{-1} via two triangular solves.
    let w = tri_solve_fwd(l, &phi, true).unwrap(); // L^T W = Phi
    // Y L = W  =>  L^T Y^T = W^T
    let yt = tri_solve_fwd(l, &w.transposed().unwrap(), true).unwrap();
    let y = yt.transposed().unwrap();
    // Symmetric gradient, folded onto the lower triangle.
    let mut out = Tensor::zeros(&[n, n]);
    for i in 0..n {
        for j in 0..=i {
            let sym = 0.5 * (y.at2(i, j) + y.at2(j, i));
            out.set2(i, j, if i == j { sym } else { 2.0 * sym });
        }
    }
    out
}

/// Solve `L X = B` (or `Lᵀ X = B` when `transpose`) for lower-triangular `L`.
///
/// `B` may be a vector or a matrix; only the lower triangle of `L` is read.
pub fn tri_solve_fwd(l: &Tensor, b: &Tensor, transpose: bool) -> Result<Tensor> {
    if l.rank() != 2 || l.shape()[0] != l.shape()[1] {
        return Err(shape_err("triangular_solve", format!("expected square matrix, got {:?}", l.shape())));
    }
    let n = l.shape()[0];
    let (rows, cols) = match b.rank() {
        1 => (b.shape()[0], 1),
        2 => (b.shape()[0], b.shape()[1]),
        _ => return Err(shape_err("triangular_solve", format!("rhs must be vector or matrix, got {:?}", b.shape()))),
    };
    if rows != n {
        return Err(shape_err(
            "triangular_solve",
            format!("rhs has {} rows, matrix side is {}", rows, n),
        ));
    }
    for i in 0..n {
        if l.at2(i, i) == 0.0 {
            return Err(Error::NotPositiveDefinite { pivot: i });
        }
    }
    let mut x = b.clone();
    let xd = x.data_mut();
    if !transpose {
        // forward substitution
        for i in 0..n {
            for c in 0..cols {
                let mut acc = xd[i * cols + c];
                for k in 0..i {
                    acc -= l.at2(i, k) * xd[k * cols + c];
                }
                xd[i * cols + c] = acc / l.at2(i, i);
            }
        }
    } else {
        // back substitution with L^T
        for i in (0..n).rev() {
            for c in 0..cols {
                let mut acc = xd[i * cols + c];
                for k in (i + 1)..n {
                    acc -= l.at2(k, i) * xd[k * cols + c];
                }
                xd[i * cols + c] = acc / l.at2(i, i);
            }
        }
    }
    Ok(x)
}

/// Pullback for `X = op(L)^{-1} B` where `op` is identity or transpose.
///
/// With `A = op(L)`: `dB = A^{-T} Ḡ` and `dA = -A^{-T} Ḡ Xᵀ`; the result is
/// masked onto the lower triangle of `L` since the upper half is never read.
pub fn tri_solve_bwd(l: &Tensor, x: &Tensor, gout: &Tensor, transpose: bool) -> (Tensor, Tensor) {
    let n = l.shape()[0];
    let vec_rhs = x.rank() == 1;
    let x2 = if vec_rhs { x.reshaped(vec![n, 1]).unwrap() } else { x.clone() };
    let g2 = if vec_rhs { gout.reshaped(vec![n, 1]).unwrap() } else { gout.clone() };
    // gb = op(L)^{-T} gout: solve with the opposite transpose flag.
    let gb2 = tri_solve_fwd(l, &g2, !transpose).unwrap();
    // da = -gb x^T, mapped back to L.
    let da = matmul_fwd(&gb2, &x2.transposed().unwrap()).unwrap();
    let mut gl = Tensor::zeros(&[n, n]);
    for i in 0..n {
        for j in 0..=i {
            let v = if transpose {
                // dL = (dA)^T for A = L^T
                -da.at2(j, i)
            } else {
                -da.at2(i, j)
            };
            gl.set2(i, j, v);
        }
    }
    let gb = if vec_rhs { gb2.reshaped(vec![n]).unwrap() } else { gb2 };
    (gl, gb)
}

// ---------------------------------------------------------------------------
// binary cross-entropy with logits

/// Numerically stable `BCE(sigmoid(x), y)` for one-element tensors.
pub fn bce_with_logits_fwd(logit: &Tensor, target: &Tensor) -> Result<Tensor> {
    if !logit.is_scalar() || !target.is_scalar() {
        return Err(shape_err(
            "bce_with_logits",
            format!("expected one-element operands, got {:?} and {:?}", logit.shape(), target.shape()),
        ));
    }
    let x = logit.item();
    let y = target.item();
    let loss = x.max(0.0) - x * y + (1.0 + (-x.abs()).exp()).ln();
    Ok(Tensor::scalar(loss))
}

pub fn bce_with_logits_bwd(logit: &Tensor, target: &Tensor, gout: &Tensor) -> (Tensor, Tensor) {
    let x = logit.item();
    let y = target.item();
    let sig = 1.0 / (1.0 + (-x).exp());
    let g = gout.item();
    let glogit = Tensor::new(logit.shape().to_vec(), vec![g * (sig - y)]).unwrap();
    let gtarget = Tensor::new(target.shape().to_vec(), vec![g * (-x)]).unwrap();
    (glogit, gtarget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_shapes() {
        let a = Tensor::new(vec![2, 3], vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let v = Tensor::new(vec![3], vec![1.0, 0.0, -1.0]).unwrap();
        let out = matmul_fwd(&a, &v).unwrap();
        assert_eq!(out.shape(), &[2]);
        assert_eq!(out.data(), &[-2.0, -2.0]);
        let dot = matmul_fwd(&v, &v).unwrap();
        assert_eq!(dot.item(), 2.0);
    }

    #[test]
    fn cholesky_identity() {
        let l = cholesky_fwd(&Tensor::eye(2)).unwrap();
        assert_eq!(l.data(), Tensor::eye(2).data());
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = Tensor::new(vec![2, 2], vec![1.0, 2.0, 2.0, 1.0]).unwrap();
        match cholesky_fwd(&a) {
            Err(Error::NotPositiveDefinite { pivot }) => assert_eq!(pivot, 1),
            other => panic!("expected pivot failure, got {:?}", other),
        }
    }

    #[test]
    fn tri_solve_round_trip() {
        let l = Tensor::new(vec![2, 2], vec![2.0, 0.0, 1.0, 3.0]).unwrap();
        let b = Tensor::new(vec![2], vec![4.0, 10.0]).unwrap();
        let x = tri_solve_fwd(&l, &b, false).unwrap();
        // L x = b  =>  x = [2, 8/3]
        assert!((x.data()[0] - 2.0).abs() < 1e-14);
        assert!((x.data()[1] - 8.0 / 3.0).abs() < 1e-14);
        let xt = tri_solve_fwd(&l, &b, true).unwrap();
        // L^T x = b => x2 = 10/3, x1 = (4 - 1*10/3)/2
        assert!((xt.data()[1] - 10.0 / 3.0).abs() < 1e-14);
        assert!((xt.data()[0] - (4.0 - 10.0 / 3.0) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn conv_direct_sums() {
        let x = Tensor::new(vec![1, 4], vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let k = Tensor::new(vec![1, 1, 2], vec![1.0, 1.0]).unwrap();
        let out = causal_conv_fwd(&x, &k, 1).unwrap();
        assert_eq!(out.data(), &[1.0, 3.0, 5.0, 7.0]);
        let out2 = causal_conv_fwd(&x, &k, 2).unwrap();
        assert_eq!(out2.data(), &[1.0, 2.0, 4.0, 6.0]);
    }

    #[test]
    fn layer_norm_population_std() {
        let x = Tensor::new(vec![3, 1], vec![1.0, 2.0, 3.0]).unwrap();
        let g = Tensor::filled(&[3], 1.0);
        let b = Tensor::zeros(&[3]);
        let out = layer_norm_fwd(&x, &g, &b).unwrap();
        let expect = 1.2247448713915891;
        assert!((out.data()[0] + expect).abs() < 1e-4);
        assert!(out.data()[1].abs() < 1e-9);
        assert!((out.data()[2] - expect).abs() < 1e-4);
    }
}
