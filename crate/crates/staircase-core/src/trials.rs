use rand_chacha::ChaCha8Rng;

use crate::StaircaseError;

/// Fresh points tried before a singular instance is reported.
pub const RESAMPLE_BUDGET: usize = 32;

/// Run `f` on fresh random points until it gets past the singular locus.
/// Returns the value and the number of resamples used. Only `Singular`
/// errors trigger a retry; anything else is a real failure.
pub fn with_resample<R>(
    rng: &mut ChaCha8Rng,
    mut f: impl FnMut(&mut ChaCha8Rng) -> Result<R, StaircaseError>,
) -> Result<(R, usize), StaircaseError> {
    for retries in 0..=RESAMPLE_BUDGET {
        match f(rng) {
            Ok(v) => return Ok((v, retries)),
            Err(StaircaseError::Singular(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(StaircaseError::SingularPoint(RESAMPLE_BUDGET))
}
