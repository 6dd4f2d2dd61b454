//! Deciding whether a compressed orbit family contains a real point.
//!
//! A point whose coordinates repeat in blocks (orbit pattern given by a
//! [`Partition`]) is compressed to the per-block elementary symmetric values
//! of its distinct block values.  A finite family of such compressed points,
//! stored as a [`ZeroDimParam`] whose coordinates are grouped blockwise, can
//! be tested for a *real* preimage without ever reconstructing coordinates:
//! lift each block to its Vieta polynomial and ask, at each real root of the
//! defining polynomial, whether every block's lift splits completely over
//! the reals.  All arithmetic is exact.

use num_traits::{One, Zero};

use crate::combi::Partition;
use crate::poly::Rational;
use crate::realroot::{BiPoly, RealRootError, ThomContext, UniPoly};
use crate::zerodim::ZeroDimParam;

/// Errors from orbit compression and the real-preimage decision.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecideError {
    /// The point does not have the block structure of the partition.
    #[error("point does not match the orbit pattern: {0}")]
    PatternMismatch(String),
    /// The orbit parametrization is malformed.
    #[error("invalid orbit parametrization: {0}")]
    InvalidParam(String),
    /// Real-root machinery failure.
    #[error(transparent)]
    RealRoot(#[from] RealRootError),
}

impl From<crate::zerodim::InvalidReason> for DecideError {
    fn from(r: crate::zerodim::InvalidReason) -> Self {
        DecideError::InvalidParam(r.to_string())
    }
}

/// A finite set of compressed orbits: a partition fixing the block pattern
/// and a zero-dimensional parametrization whose coordinates are the
/// per-block elementary symmetric values, grouped block by block in the
/// partition's canonical (ascending part value) order.
#[derive(Debug, Clone)]
pub struct OrbitParam {
    lambda: Partition,
    param: ZeroDimParam,
}

impl OrbitParam {
    /// Pairs a partition with a parametrization; the parametrization must
    /// have one coordinate per part of the partition.
    pub fn new(lambda: Partition, param: ZeroDimParam) -> Result<Self, DecideError> {
        if lambda.len() != param.ncoords() {
            return Err(DecideError::InvalidParam(format!(
                "partition has {} parts but the parametrization has {} coordinates",
                lambda.len(),
                param.ncoords()
            )));
        }
        Ok(OrbitParam { lambda, param })
    }

    /// The orbit pattern.
    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    /// The underlying parametrization.
    pub fn param(&self) -> &ZeroDimParam {
        &self.param
    }

    /// The block structure: `(part value, block length)` pairs, ascending
    /// by part value, matching the coordinate grouping.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        self.lambda.multiplicities()
    }
}

/// The blockwise Vieta lift of an [`OrbitParam`]: for each block of length
/// `l`, the polynomial `q0*u^l - v_1*u^(l-1) + v_2*u^(l-2) - ...` whose
/// roots at `u`, after specializing `T` to a root of `q`, are exactly the
/// distinct block values of the corresponding preimage point.
#[derive(Debug, Clone)]
pub struct VietaLift {
    blocks: Vec<BiPoly>,
}

impl VietaLift {
    /// One lifted polynomial per block, in block order.
    pub fn blocks(&self) -> &[BiPoly] {
        &self.blocks
    }
}

/// Compresses a point with the given orbit pattern to its per-block
/// elementary symmetric values, concatenated in block order.
///
/// The point must be in canonical arrangement: for each block `(part βi,
/// length li)` in ascending part order, `li` runs of `βi` equal
/// coordinates; and the run values must be pairwise distinct across the
/// whole point (otherwise its true pattern is a coarser partition).
pub fn orbit_compress(u: &[Rational], lambda: &Partition) -> Result<Vec<Rational>, DecideError> {
    if u.len() != lambda.n() {
        return Err(DecideError::PatternMismatch(format!(
            "point has {} coordinates but the partition sums to {}",
            u.len(),
            lambda.n()
        )));
    }
    let mut values: Vec<Vec<Rational>> = Vec::new();
    let mut pos = 0;
    for (part, len) in lambda.multiplicities() {
        let mut block_values = Vec::with_capacity(len);
        for _ in 0..len {
            let run = &u[pos..pos + part];
            if run.iter().any(|x| x != &run[0]) {
                return Err(DecideError::PatternMismatch(format!(
                    "coordinates {}..{} are not all equal",
                    pos + 1,
                    pos + part
                )));
            }
            block_values.push(run[0].clone());
            pos += part;
        }
        values.push(block_values);
    }
    let mut all: Vec<&Rational> = values.iter().flatten().collect();
    all.sort();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(DecideError::PatternMismatch(
            "block values are not pairwise distinct, so the true pattern is coarser".into(),
        ));
    }
    let mut out = Vec::with_capacity(lambda.len());
    for block_values in &values {
        out.extend(elementary_values(block_values));
    }
    Ok(out)
}

/// The elementary symmetric values `e_1, ..., e_m` of a list of `m` values.
fn elementary_values(values: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); values.len() + 1];
    e[0] = Rational::one();
    let mut filled = 0usize;
    for a in values {
        filled += 1;
        for k in (1..=filled).rev() {
            let bump = &e[k - 1] * a;
            e[k] = &e[k] + &bump;
        }
    }
    e.remove(0);
    e
}

/// Builds the blockwise Vieta lift of a valid orbit parametrization.
pub fn vieta_lift(op: &OrbitParam) -> Result<VietaLift, DecideError> {
    op.param.validate()?;
    let q0 = op.param.denominator_poly().clone();
    let v = op.param.v();
    let mut blocks = Vec::new();
    let mut pos = 0;
    for (_, len) in op.lambda.multiplicities() {
        let block = &v[pos..pos + len];
        pos += len;
        // Ascending u-coefficients: coefficient of u^(len-j) is (-1)^j v_j.
        let mut coeffs = vec![UniPoly::zero(); len + 1];
        coeffs[len] = q0.clone();
        for (j, vj) in block.iter().enumerate() {
            let j = j + 1;
            let signed = if j % 2 == 1 { -vj } else { vj.clone() };
            coeffs[len - j] = signed;
        }
        blocks.push(BiPoly::new(coeffs));
    }
    Ok(VietaLift { blocks })
}

/// `true` iff some point of the compressed family has a real preimage:
/// there is a real root of `q` at which every block's Vieta lift has all
/// its roots real (counted with multiplicity, so nonreal pairs of any
/// multiplicity are detected).
pub fn decide_real_preimage(op: &OrbitParam) -> Result<bool, DecideError> {
    op.param.validate()?;
    let lift = vieta_lift(op)?;
    let q = op.param.q();
    if q.degree() == Some(0) {
        return Ok(false); // empty family
    }
    let ctx = ThomContext::new(q)?;
    let encodings = ctx.encodings().to_vec();
    'fibers: for enc in &encodings {
        // The lift's leading u-coefficient is the denominator polynomial;
        // it must not vanish at the fiber (coprimality guarantees this for
        // any parametrization that validates).
        if ctx.sign_at(enc, op.param.denominator_poly())? == 0 {
            return Err(DecideError::InvalidParam(
                "denominator polynomial vanishes at a root of q".into(),
            ));
        }
        for rho in lift.blocks() {
            let (real, complex) = ctx.parametric_root_profile(rho, enc)?;
            if real != complex {
                // A nonreal distinct root exists; nonreal roots of a real
                // polynomial pair up, so the block does not split.
                continue 'fibers;
            }
        }
        return Ok(true);
    }
    Ok(false)
}
