//! Circles in inversive coordinates and SVG output.
//!
//! A circle with center `c` and radius `r` is `(k̂, k, kx, ky)` with `k = 1/r`,
//! `(kx, ky) = k c` and `k̂ = k|c|² − r`. A line `{p : p·n = δ}` with unit
//! normal `n` pointing away from the disks it bounds is `(2δ, 0, n)`. The
//! product
//!
//! `⟨A, B⟩ = kx kx' + ky ky' − ½(k k̂' + k̂ k')`
//!
//! equals 1 on every circle and line, −1 for tangent disks and `−cosh`
//! of the hyperbolic distance for disjoint ones, so the four base circles
//! reproduce the separation matrix.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lorentz::GENERATOR_NORMALS;
use crate::orbit::{orbit_bfs, IVec};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InversiveCircle {
    pub cocurvature: f64,
    pub curvature: f64,
    pub kx: f64,
    pub ky: f64,
}

impl InversiveCircle {
    pub fn from_center(cx: f64, cy: f64, r: f64) -> Self {
        let k = 1.0 / r;
        InversiveCircle { cocurvature: k * (cx * cx + cy * cy) - r, curvature: k, kx: k * cx, ky: k * cy }
    }

    /// Line through `{p : p·n = offset}`, `n` a unit vector.
    pub fn line(nx: f64, ny: f64, offset: f64) -> Self {
        InversiveCircle { cocurvature: 2.0 * offset, curvature: 0.0, kx: nx, ky: ny }
    }

    pub fn dot(&self, o: &Self) -> f64 {
        self.kx * o.kx + self.ky * o.ky - 0.5 * (self.curvature * o.cocurvature + self.cocurvature * o.curvature)
    }

    pub fn norm(&self) -> f64 {
        self.dot(self)
    }

    fn scale(&self, s: f64) -> Self {
        InversiveCircle {
            cocurvature: s * self.cocurvature,
            curvature: s * self.curvature,
            kx: s * self.kx,
            ky: s * self.ky,
        }
    }

    pub fn is_line(&self) -> bool {
        self.curvature.abs() <= 1e-12 * (self.kx.abs() + self.ky.abs())
    }

    pub fn center(&self) -> (f64, f64) {
        (self.kx / self.curvature, self.ky / self.curvature)
    }

    pub fn radius(&self) -> f64 {
        1.0 / self.curvature.abs()
    }
}

/// Images of `e₁..e₄`.
pub type BaseConfiguration = [InversiveCircle; 4];

/// `e₁, e₂` of radius ½ centered at `(0, ½)` and `(√2, ½)`, `e₃` the line
/// `y = 0`, `e₄` the line `y = 1`.
pub fn base_circles() -> BaseConfiguration {
    [
        InversiveCircle::from_center(0.0, 0.5, 0.5),
        InversiveCircle::from_center(2f64.sqrt(), 0.5, 0.5),
        InversiveCircle::line(0.0, -1.0, 0.0),
        InversiveCircle::line(0.0, 1.0, 1.0),
    ]
}

fn combine(v: &[f64; 4], base: &BaseConfiguration) -> InversiveCircle {
    let mut out = InversiveCircle { cocurvature: 0.0, curvature: 0.0, kx: 0.0, ky: 0.0 };
    for (x, b) in v.iter().zip(base) {
        out.cocurvature += x * b.cocurvature;
        out.curvature += x * b.curvature;
        out.kx += x * b.kx;
        out.ky += x * b.ky;
    }
    out
}

/// `Σ vᵢ · base[i]`, checked to have unit norm.
pub fn vector_to_circle(v: &IVec, base: &BaseConfiguration) -> Result<InversiveCircle> {
    let c = combine(&v.map(|x| x as f64), base);
    let n = c.norm();
    let scale = v.iter().map(|x| (*x as f64).abs()).sum::<f64>().max(1.0);
    if (n - 1.0).abs() > 1e-9 * scale * scale {
        return Err(Error::NotACircle(n));
    }
    Ok(c)
}

/// Mirrors of the five generating reflections.
pub fn symmetry_circles(base: &BaseConfiguration) -> Vec<InversiveCircle> {
    GENERATOR_NORMALS
        .iter()
        .map(|n| {
            let c = combine(&n.map(|x| x as f64), base);
            c.scale(1.0 / c.norm().sqrt())
        })
        .collect()
}

/// Plane region drawn, `width_px` wide.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
    pub width_px: f64,
}

impl Default for Viewport {
    fn default() -> Self {
        Viewport { x0: -0.6, y0: -0.1, x1: 2.0, y1: 1.1, width_px: 1200.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderOptions {
    pub viewport: Viewport,
    pub r_min: f64,
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { viewport: Viewport::default(), r_min: 1e-3, labels: false }
    }
}

/// A circle plus how to draw it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Shape {
    pub circle: InversiveCircle,
    pub dotted: bool,
}

fn clip_line(c: &InversiveCircle, v: &Viewport) -> Option<[(f64, f64); 2]> {
    let (nx, ny, d) = (c.kx, c.ky, c.cocurvature / 2.0);
    let mut pts = Vec::new();
    if ny.abs() > 1e-15 {
        for x in [v.x0, v.x1] {
            let y = (d - nx * x) / ny;
            if y >= v.y0 && y <= v.y1 {
                pts.push((x, y));
            }
        }
    }
    if nx.abs() > 1e-15 {
        for y in [v.y0, v.y1] {
            let x = (d - ny * y) / nx;
            if x >= v.x0 && x <= v.x1 {
                pts.push((x, y));
            }
        }
    }
    pts.dedup();
    (pts.len() >= 2).then(|| [pts[0], pts[pts.len() - 1]])
}

/// Deterministic SVG: circles of radius `≥ r_min` meeting the viewport, and lines.
pub fn render_svg(shapes: &[Shape], opts: &RenderOptions) -> String {
    let v = &opts.viewport;
    let s = v.width_px / (v.x1 - v.x0);
    let height_px = (v.y1 - v.y0) * s;
    let px = |x: f64| (x - v.x0) * s;
    let py = |y: f64| (v.y1 - y) * s;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="0 0 {:.3} {:.3}">"#,
        v.width_px, height_px, v.width_px, height_px
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for sh in shapes {
        let c = &sh.circle;
        let style = if sh.dotted {
            r#"fill="none" stroke="gray" stroke-width="0.8" stroke-dasharray="3,3""#
        } else {
            r#"fill="none" stroke="black" stroke-width="0.6""#
        };
        if c.is_line() {
            if let Some([(xa, ya), (xb, yb)]) = clip_line(c, v) {
                let _ = writeln!(
                    out,
                    r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" {style}/>"#,
                    px(xa),
                    py(ya),
                    px(xb),
                    py(yb)
                );
            }
            continue;
        }
        let (cx, cy) = c.center();
        let r = c.radius();
        let outside = cx + r < v.x0 || cx - r > v.x1 || cy + r < v.y0 || cy - r > v.y1;
        if r < opts.r_min || outside {
            continue;
        }
        let _ = writeln!(out, r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" {style}/>"#, px(cx), py(cy), r * s);
        if opts.labels && !sh.dotted {
            let font = (r * s * 0.6).clamp(1.0, 24.0);
            let _ = writeln!(
                out,
                r#"<text x="{:.3}" y="{:.3}" font-size="{:.2}" text-anchor="middle" dominant-baseline="central">{}</text>"#,
                px(cx),
                py(cy),
                font,
                c.curvature.round() as i64
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Circles of the orbit below `hmax`, optionally with the symmetry mirrors dotted.
pub fn orbit_shapes(hmax: i64, base: &BaseConfiguration, symmetries: bool) -> Result<Vec<Shape>> {
    let orbit = orbit_bfs(hmax)?;
    let mut shapes = orbit
        .vectors
        .iter()
        .map(|v| Ok(Shape { circle: vector_to_circle(v, base)?, dotted: false }))
        .collect::<Result<Vec<_>>>()?;
    if symmetries {
        shapes.extend(symmetry_circles(base).into_iter().map(|circle| Shape { circle, dotted: true }));
    }
    Ok(shapes)
}
