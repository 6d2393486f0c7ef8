use anyhow::bail;
use tlj::{CycloScalar, RatScalar, Scalar};

pub const MAX_ROOT: u32 = 12;

/// A computation generic over the coefficient field.
pub trait AtRootFn {
    type Out;
    fn call<S: Scalar>(self) -> Self::Out;
}

pub fn check_root(root: Option<u32>) -> anyhow::Result<Option<u32>> {
    match root {
        Some(r) if !(2..=MAX_ROOT).contains(&r) => bail!("--root {r} is outside 2..={MAX_ROOT}"),
        _ => Ok(root),
    }
}

macro_rules! roots {
    ($root:expr, $f:expr; $($n:literal)*) => {
        match $root {
            None => $f.call::<RatScalar>(),
            $(Some($n) => $f.call::<CycloScalar<$n>>(),)*
            Some(r) => unreachable!("root {r} passed check_root"),
        }
    };
}

/// Runs `f` over `RatScalar` or `CycloScalar<R>`.
pub fn with_root<F: AtRootFn>(root: Option<u32>, f: F) -> F::Out {
    roots!(root, f; 2 3 4 5 6 7 8 9 10 11 12)
}
