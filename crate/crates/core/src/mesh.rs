//! Grid sampling of surfaces and curves, with Wavefront OBJ output.

use std::io::{self, Write};

use crate::developable::RuledSurface;
use crate::error::{Error, Result};
use crate::model::{PlaneCurve, Umbrella};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    /// Zero-based quads.
    pub faces: Vec<[usize; 4]>,
    /// Zero-based polylines.
    pub lines: Vec<Vec<usize>>,
}

impl Mesh {
    pub fn is_finite(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().all(|c| c.is_finite()))
    }

    /// `v` lines, then `f` quads, then `l` polylines; indices one-based.
    pub fn write_obj<W: Write>(&self, out: &mut W) -> io::Result<()> {
        for v in &self.vertices {
            writeln!(out, "v {} {} {}", format_g9(v[0]), format_g9(v[1]), format_g9(v[2]))?;
        }
        for f in &self.faces {
            writeln!(out, "f {} {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1, f[3] + 1)?;
        }
        for l in &self.lines {
            let idx: Vec<String> = l.iter().map(|i| (i + 1).to_string()).collect();
            writeln!(out, "l {}", idx.join(" "))?;
        }
        Ok(())
    }

    pub fn to_obj_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_obj(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("OBJ output is ASCII")
    }
}

/// `%.9g`.
pub fn format_g9(x: f64) -> String {
    const P: i32 = 9;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (P - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Uniform nodes on `[lo, hi]`.
pub fn linspace(range: (f64, f64), n: usize) -> Result<Vec<f64>> {
    let (lo, hi) = range;
    if n < 2 {
        return Err(Error::InvalidMesh(format!("resolution {n} is below 2")));
    }
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::InvalidMesh(format!("degenerate range [{lo}, {hi}]")));
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

/// `nx * ny` vertices of `f(x_i, y_j)`, row-major in `x`, and `(nx-1)(ny-1)` quads.
pub fn sample_grid<F>(f: F, x_range: (f64, f64), y_range: (f64, f64), nx: usize, ny: usize) -> Result<Mesh>
where
    F: Fn(f64, f64) -> [f64; 3],
{
    let xs = linspace(x_range, nx)?;
    let ys = linspace(y_range, ny)?;
    let mut mesh = Mesh::default();
    for &x in &xs {
        for &y in &ys {
            mesh.vertices.push(f(x, y));
        }
    }
    for i in 0..nx - 1 {
        for j in 0..ny - 1 {
            let a = i * ny + j;
            let b = (i + 1) * ny + j;
            mesh.faces.push([a, b, b + 1, a + 1]);
        }
    }
    Ok(mesh)
}

pub fn sample_ruled_surface(
    ruled: &RuledSurface,
    x_range: (f64, f64),
    y_range: (f64, f64),
    nx: usize,
    ny: usize,
) -> Result<Mesh> {
    sample_grid(|x, y| ruled.eval(x, y), x_range, y_range, nx, ny)
}

pub fn sample_umbrella(
    umbrella: &Umbrella,
    u_range: (f64, f64),
    v_range: (f64, f64),
    nu: usize,
    nv: usize,
) -> Result<Mesh> {
    sample_grid(|u, v| umbrella.eval(u, v), u_range, v_range, nu, nv)
}

/// The polyline `x -> W(c(x))`.
pub fn sample_image_curve(umbrella: &Umbrella, curve: &PlaneCurve, x_range: (f64, f64), n: usize) -> Result<Mesh> {
    let xs = linspace(x_range, n)?;
    let vertices: Vec<[f64; 3]> = xs
        .iter()
        .map(|&x| {
            let [u, v] = curve.eval(x);
            umbrella.eval(u, v)
        })
        .collect();
    Ok(Mesh { lines: vec![(0..vertices.len()).collect()], vertices, faces: Vec::new() })
}
