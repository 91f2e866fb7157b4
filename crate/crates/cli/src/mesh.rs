//! OBJ export of the umbrella, the image curve and the osculating developable.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use umbrella_core::developable::{DevelopableData, RuledSurface};
use umbrella_core::mesh::{sample_image_curve, sample_ruled_surface, sample_umbrella, Mesh};
use umbrella_core::model::{build_curve, build_umbrella};

use crate::config::{MeshOptions, Validated};

pub struct Meshes {
    pub umbrella: Mesh,
    pub curve: Mesh,
    pub od_w: Mesh,
}

pub fn build_meshes(v: &Validated) -> Result<Meshes> {
    let opts = v.config.mesh.clone().unwrap_or_default();
    let MeshOptions { x_range, y_range, u_range, v_range, nx, ny } = opts;
    let umbrella = build_umbrella(&v.coefficients);
    let curve = build_curve(&v.curve, v.order).context("model")?;
    let data = DevelopableData::compute(&umbrella, &curve).context("developable")?;
    let gamma = umbrella.image_curve(&curve).context("model")?.to_float();
    let ruled = RuledSurface::new(gamma, data.director).context("developable")?;
    Ok(Meshes {
        umbrella: sample_umbrella(&umbrella, u_range, v_range, nx, ny).context("mesh: umbrella")?,
        curve: sample_image_curve(&umbrella, &curve, x_range, nx).context("mesh: curve")?,
        od_w: sample_ruled_surface(&ruled, x_range, y_range, nx, ny).context("mesh: od_w")?,
    })
}

/// Writes `umbrella.obj`, `curve.obj` and `od_w.obj` into `dir`.
pub fn run_mesh(v: &Validated, dir: &Path) -> Result<Vec<PathBuf>> {
    let meshes = build_meshes(v)?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = Vec::new();
    for (name, mesh) in [("umbrella.obj", &meshes.umbrella), ("curve.obj", &meshes.curve), ("od_w.obj", &meshes.od_w)] {
        let path = dir.join(name);
        fs::write(&path, mesh.to_obj_string()).with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    Ok(written)
}
