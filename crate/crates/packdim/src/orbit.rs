//! Orbit of the seed faces under the reflection group, cut off by height.

use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::lorentz::{from_ints, reflection_matrix, SeparationForm, GENERATOR_NORMALS};
use crate::scalar::QuadSurd;

pub type IVec = [i64; 4];
pub type IMat = [[i64; 4]; 4];

const DUMP_MAGIC: &[u8; 4] = b"PDOH";
const DUMP_VERSION: u32 = 1;

/// Default cap on stored vectors, about 1.5 GB with the dedup set.
pub const DEFAULT_MAX_VECTORS: usize = 40_000_000;

/// The five reflections and the five seed faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionGroup {
    pub generators: [IMat; 5],
    pub seeds: [IVec; 5],
}

impl ReflectionGroup {
    pub fn new() -> Self {
        let form = SeparationForm::<QuadSurd>::boyd_mallows();
        let generators = GENERATOR_NORMALS.map(|n| {
            let t = reflection_matrix(&from_ints::<QuadSurd>(n), &form).expect("generator normals are spacelike");
            t.map(|row| {
                row.map(|x| match x.to_z2() {
                    Some((p, 0)) => p,
                    _ => panic!("non-integral generator entry {x:?}"),
                })
            })
        });
        let seeds = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 0, -1]];
        ReflectionGroup { generators, seeds }
    }

    /// `T v` with overflow detection.
    pub fn apply(&self, g: usize, v: &IVec) -> Result<IVec> {
        let t = &self.generators[g];
        let mut out = [0i64; 4];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0i64;
            for k in 0..4 {
                acc = t[i][k].checked_mul(v[k]).and_then(|x| x.checked_add(acc)).ok_or(Error::Overflow)?;
            }
            *o = acc;
        }
        Ok(out)
    }
}

impl Default for ReflectionGroup {
    fn default() -> Self {
        Self::new()
    }
}

/// `4x₁ + 4x₂ + 2x₃ + 2x₄`.
pub fn height(v: &IVec) -> i64 {
    4 * v[0] + 4 * v[1] + 2 * v[2] + 2 * v[3]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub hmax: i64,
    /// Distinct vectors in discovery order.
    pub vectors: Vec<IVec>,
}

impl Orbit {
    pub fn count(&self) -> usize {
        self.vectors.len()
    }

    /// Heights sorted ascending.
    pub fn heights(&self) -> Vec<u64> {
        let mut h: Vec<u64> = self.vectors.iter().map(|v| height(v) as u64).collect();
        h.sort_unstable();
        h
    }
}

type Packed = [i32; 4];

fn pack(v: &IVec) -> Result<Packed> {
    let mut p = [0i32; 4];
    for (o, x) in p.iter_mut().zip(v) {
        *o = i32::try_from(*x).map_err(|_| Error::Overflow)?;
    }
    Ok(p)
}

/// Primitive height `h/2 = 2x₁ + 2x₂ + x₃ + x₄`; `height` is always even.
pub fn reduced_height(v: &IVec) -> i64 {
    height(v) / 2
}

/// Every vector reachable from the seeds through vectors with
/// `0 < reduced_height < hmax`.
pub fn orbit_bfs(hmax: i64) -> Result<Orbit> {
    orbit_bfs_with(hmax, DEFAULT_MAX_VECTORS)
}

pub fn orbit_bfs_with(hmax: i64, max_vectors: usize) -> Result<Orbit> {
    let group = ReflectionGroup::new();
    let keep = |v: &IVec| {
        let h = reduced_height(v);
        h > 0 && h < hmax
    };
    let mut seen: FxHashSet<Packed> = FxHashSet::default();
    let mut vectors: Vec<IVec> = Vec::new();
    for s in group.seeds.iter().filter(|s| keep(s)) {
        if seen.insert(pack(s)?) {
            vectors.push(*s);
        }
    }
    let mut head = 0;
    while head < vectors.len() {
        let v = vectors[head];
        head += 1;
        for g in 0..5 {
            let w = group.apply(g, &v)?;
            if keep(&w) && seen.insert(pack(&w)?) {
                if vectors.len() >= max_vectors {
                    return Err(Error::MemoryBudget(max_vectors));
                }
                vectors.push(w);
            }
        }
    }
    Ok(Orbit { hmax, vectors })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FitTarget {
    /// `N(h) = #{height ≤ h}` at each distinct height.
    #[default]
    Cumulative,
    /// Rank against height over the sorted list.
    Rank,
}

impl std::str::FromStr for FitTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cumulative" => Ok(FitTarget::Cumulative),
            "rank" => Ok(FitTarget::Rank),
            _ => Err(Error::Config(format!("unknown fit target {s:?}"))),
        }
    }
}

/// `y = a xᵇ`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct PowerFit {
    pub a: f64,
    pub b: f64,
}

fn least_squares(points: impl Iterator<Item = (f64, f64)>) -> Result<PowerFit> {
    let (mut n, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        n += 1.0;
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    let den = n * sxx - sx * sx;
    if n < 2.0 || den.abs() <= 1e-12 * n * sxx.abs().max(1.0) {
        return Err(Error::DegenerateData);
    }
    let b = (n * sxy - sx * sy) / den;
    let ln_a = (sy - b * sx) / n;
    Ok(PowerFit { a: ln_a.exp(), b })
}

/// Log-log least squares on sorted heights.
pub fn fit_exponent(sorted_heights: &[u64], target: FitTarget) -> Result<PowerFit> {
    let h = sorted_heights;
    if h.first().is_none_or(|&x| x == 0) {
        return Err(Error::DegenerateData);
    }
    match target {
        FitTarget::Cumulative => least_squares(
            h.iter()
                .enumerate()
                .filter(|&(i, x)| h.get(i + 1) != Some(x))
                .map(|(i, &x)| (x as f64, (i + 1) as f64)),
        ),
        FitTarget::Rank => least_squares(h.iter().enumerate().map(|(i, &x)| (x as f64, (i + 1) as f64))),
    }
}

/// Sorted heights behind a 16-byte header: magic, version `u32`, count `u64`.
pub fn write_heights(path: &Path, sorted_heights: &[u64]) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    w.write_all(DUMP_MAGIC)?;
    w.write_all(&DUMP_VERSION.to_le_bytes())?;
    w.write_all(&(sorted_heights.len() as u64).to_le_bytes())?;
    for h in sorted_heights {
        w.write_all(&h.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_heights(path: &Path) -> Result<Vec<u64>> {
    let mut r = BufReader::new(std::fs::File::open(path)?);
    let mut head = [0u8; 16];
    r.read_exact(&mut head)?;
    if &head[..4] != DUMP_MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let version = u32::from_le_bytes(head[4..8].try_into().unwrap());
    if version != DUMP_VERSION {
        return Err(Error::Cache(format!("format version {version}, expected {DUMP_VERSION}")));
    }
    let count = u64::from_le_bytes(head[8..16].try_into().unwrap()) as usize;
    let mut out = Vec::with_capacity(count);
    let mut b = [0u8; 8];
    for _ in 0..count {
        r.read_exact(&mut b)?;
        out.push(u64::from_le_bytes(b));
    }
    Ok(out)
}

/// `(bucket upper edge, cumulative count ≤ edge)` in steps of `width`.
pub fn write_histogram(w: impl Write, sorted_heights: &[u64], width: u64) -> Result<()> {
    let width = width.max(1);
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["height", "cumulative"])?;
    let top = sorted_heights.last().copied().unwrap_or(0);
    let mut i = 0;
    let mut edge = width;
    loop {
        while i < sorted_heights.len() && sorted_heights[i] <= edge {
            i += 1;
        }
        out.write_record([edge.to_string(), i.to_string()])?;
        if edge >= top {
            break;
        }
        edge += width;
    }
    out.flush()?;
    Ok(())
}
