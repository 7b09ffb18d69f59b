use super::{LieAlgebra, LieError};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

fn sl2() -> LieAlgebra {
    // [h,e] = 2e, [h,f] = -2f, [e,f] = h
    LieAlgebra::from_brackets(
        &["h", "e", "f"],
        &[(0, 1, &[(2, 1)]), (0, 2, &[(-2, 2)]), (1, 2, &[(1, 0)])],
    )
}

fn gl2() -> LieAlgebra {
    // sl2 basis plus the identity matrix z, which is central
    LieAlgebra::from_brackets(
        &["h", "e", "f", "z"],
        &[(0, 1, &[(2, 1)]), (0, 2, &[(-2, 2)]), (1, 2, &[(1, 0)])],
    )
}

fn so3() -> LieAlgebra {
    LieAlgebra::from_brackets(
        &["l1", "l2", "l3"],
        &[(0, 1, &[(1, 2)]), (1, 2, &[(1, 0)]), (2, 0, &[(1, 1)])],
    )
}

fn heisenberg3() -> LieAlgebra {
    LieAlgebra::from_brackets(&["x", "y", "z"], &[(0, 1, &[(1, 2)])])
}

fn single(key: &str) -> Result<LieAlgebra, LieError> {
    match key {
        "sl2" => Ok(sl2()),
        "gl2" => Ok(gl2()),
        "so3" => Ok(so3()),
        "heisenberg3" => Ok(heisenberg3()),
        _ => {
            if let Some(k) = key.strip_prefix("abelian:") {
                return k
                    .parse::<usize>()
                    .map(LieAlgebra::abelian)
                    .map_err(|_| LieError::UnknownCatalog(String::from(key)));
            }
            Err(LieError::UnknownCatalog(String::from(key)))
        }
    }
}

/// Built-in algebras: `sl2` (basis h, e, f), `gl2` (h, e, f, z with z the
/// identity), `so3`, `heisenberg3`, `abelian:<k>`, and `+`-joined direct
/// sums such as `sl2+sl2`.
pub fn catalog(key: &str) -> Result<LieAlgebra, LieError> {
    let unknown = || LieError::UnknownCatalog(String::from(key));
    let parts = key
        .split('+')
        .map(|p| single(p.trim()).map_err(|_| unknown()))
        .collect::<Result<Vec<_>, _>>()?;
    if parts.len() == 1 {
        return Ok(parts.into_iter().next().unwrap());
    }
    let mut names = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        names.extend(part.names().iter().map(|n| format!("{n}_{}", i + 1)));
    }
    let mut iter = parts.into_iter();
    let mut g = iter.next().unwrap();
    for h in iter {
        g = g.direct_sum(&h);
    }
    g.names = names;
    Ok(g)
}
