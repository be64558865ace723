//! Browser bindings for a few `qschubert` operations. Every function takes
//! and returns plain strings so the page needs no glue beyond the generated
//! module.

use qschubert::algebra::{format_text, parse_text, Family};
use qschubert::parabolic::parabolic_q_double_schubert;
use qschubert::quantum_ring::StructureTable;
use qschubert::schubert::{expand_in_schubert_basis, schubert_polynomial, SchubertFamily};
use qschubert::weyl::{ParabolicContext, Permutation};
use wasm_bindgen::prelude::*;

/// Largest `n` (or composition total) accepted by [`structure_table`].
pub const MAX_TABLE_N: usize = 4;

fn family(s: &str) -> Result<SchubertFamily, String> {
    s.parse()
}

fn composition(s: &str) -> Result<Option<ParabolicContext>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|e: qschubert::weyl::WeylError| e.to_string())
}

/// The Schubert polynomial of `w` in `family`; with a nonempty `parabolic`
/// composition, the parabolic polynomial specialized to `family`.
#[wasm_bindgen]
pub fn polynomial(w: &str, family_name: &str, parabolic: &str) -> Result<String, String> {
    let w: Permutation = w.parse().map_err(|e: qschubert::weyl::WeylError| e.to_string())?;
    let fam = family(family_name)?;
    let f = match composition(parabolic)? {
        None => schubert_polynomial(&w, fam),
        Some(ctx) => parabolic_q_double_schubert(&ctx, &w).map_err(|e| e.to_string())?.set_zero(|v| match v.family {
            Family::A => !fam.uses_a(),
            Family::Q => !fam.uses_q(),
            Family::X => false,
        }),
    };
    Ok(format_text(&f))
}

/// Expansion of a polynomial in the Schubert basis of `family`, one
/// `w: coefficient` line per term.
#[wasm_bindgen]
pub fn expand(poly: &str, family_name: &str) -> Result<String, String> {
    let f = parse_text(poly).map_err(|e| e.to_string())?;
    let fam = family(family_name)?;
    let expansion = expand_in_schubert_basis(&f, fam).map_err(|e| e.to_string())?;
    if expansion.is_empty() {
        return Ok("0".into());
    }
    Ok(expansion.iter().map(|(w, c)| format!("{w}: {}", format_text(c))).collect::<Vec<_>>().join("\n"))
}

/// Equivariant quantum structure constants. `flag` is either a size such as
/// `3` or a composition such as `2,1`.
#[wasm_bindgen]
pub fn structure_table(flag: &str) -> Result<String, String> {
    let flag = flag.trim();
    let (n, ctx) = if flag.contains(',') {
        let ctx = composition(flag)?.ok_or("empty composition")?;
        (ctx.n(), Some(ctx))
    } else {
        (flag.parse::<usize>().map_err(|e| format!("bad size {flag:?}: {e}"))?, None)
    };
    if n == 0 || n > MAX_TABLE_N {
        return Err(format!("size must be between 1 and {MAX_TABLE_N}"));
    }
    let table = StructureTable::compute(n, ctx).map_err(|e| e.to_string())?;
    Ok(table.to_text())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_examples() {
        assert_eq!(polynomial("[3,1,2]", "quantum-double", "").unwrap(), "x1^2 - x1*a1 - x1*a2 + a1*a2 - q1");
        assert_eq!(polynomial("[2,1]", "classical", "").unwrap(), "x1");
        assert_eq!(polynomial("[2,1]", "quantum", "1,1").unwrap(), "x1");
        assert!(polynomial("[2,2]", "classical", "").is_err());
        assert!(polynomial("[2,1]", "bogus", "").is_err());
    }

    #[test]
    fn expand_example() {
        assert_eq!(expand("x1^2", "classical").unwrap(), "[3,1,2]: 1");
        assert_eq!(expand("0", "double").unwrap(), "0");
        assert!(expand("x1 +", "double").is_err());
    }

    #[test]
    fn table_sizes() {
        let t = structure_table("2").unwrap();
        assert!(t.contains("s[2,1] * s[2,1]"), "{t}");
        assert_eq!(structure_table("2,1").unwrap().lines().count(), 9);
        assert!(structure_table("9").is_err());
        assert!(structure_table("x").is_err());
    }
}
