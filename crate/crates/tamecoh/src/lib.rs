//! Exact computational homological algebra for the 2-groups of tame
//! cohomology type (dihedral, semidihedral, quaternion).
//!
//! The crate verifies, by exact linear algebra over small finite fields,
//! the finite computations underlying the cohomology of these groups:
//! group-algebra presentations, minimal resolutions and Ext algebras,
//! Hochschild cohomology by three independent routes, A∞ structures
//! obtained by homotopy transfer, and Poincaré-series identities.
//!
//! All arithmetic is exact; no floating point, no randomised algorithms in
//! the verified paths.  Deterministic pivoting rules make every answer
//! reproducible bit for bit.

pub mod ainfty;
pub mod exactlin;
pub mod grpalg;
pub mod hochci;
pub mod ncalg;
pub mod resolve;
pub mod series;

/// Directory holding the shipped structure-constant tables.  Overridable
/// via the `TAMECOH_DATA` environment variable; defaults to the `data`
/// directory next to the workspace manifest, falling back to `./data`.
pub fn data_dir() -> std::path::PathBuf {
    if let Some(d) = std::env::var_os("TAMECOH_DATA") {
        return d.into();
    }
    let ws = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    if ws.is_dir() {
        ws
    } else {
        "data".into()
    }
}
