//! On-disk form of a built triple set.
//!
//! Layout (little endian): magic `PDTS`, format version `u32`, packing id
//! `u8`, κ as a length-prefixed UTF-8 string, level `u32`, root `(a,b,c,d)`
//! as four `f64`, concrete count `u64`, necklace count `u64`, family count
//! per necklace `u32`; then one 4×4 weight matrix per concrete triple, then
//! per necklace a 4×4 weight matrix followed by its `n_start` values.

use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{Necklace, Packing, Triple, TripleSet, Weights};
use crate::error::{Error, Result};
use crate::lorentz::{mat_vec, Mat4};

const MAGIC: &[u8; 4] = b"PDTS";
pub const CACHE_VERSION: u32 = 1;

/// Identifies what a cache file holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheHeader {
    pub packing: Packing,
    pub kappa: String,
    pub level: u32,
}

fn put_mat(w: &mut impl Write, m: &Mat4<f64>) -> Result<()> {
    for row in m {
        for x in row {
            w.write_all(&x.to_le_bytes())?;
        }
    }
    Ok(())
}

fn take<const N: usize>(r: &mut impl Read) -> Result<[u8; N]> {
    let mut b = [0u8; N];
    r.read_exact(&mut b)?;
    Ok(b)
}

fn get_f64(r: &mut impl Read) -> Result<f64> {
    Ok(f64::from_le_bytes(take(r)?))
}

fn get_u32(r: &mut impl Read) -> Result<u32> {
    Ok(u32::from_le_bytes(take(r)?))
}

fn get_u64(r: &mut impl Read) -> Result<u64> {
    Ok(u64::from_le_bytes(take(r)?))
}

fn get_mat(r: &mut impl Read) -> Result<Mat4<f64>> {
    let mut m = [[0.0; 4]; 4];
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x = get_f64(r)?;
        }
    }
    Ok(m)
}

/// Writes a set built with weight tracking.
pub fn write_cache(path: &Path, set: &TripleSet<f64>, kappa: &str) -> Result<()> {
    let ws = set
        .weights
        .as_ref()
        .ok_or_else(|| Error::Cache("set was built without weight tracking".into()))?;
    let nfam = set.packing.scheme().families.len();
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&CACHE_VERSION.to_le_bytes())?;
    w.write_all(&[set.packing.id()])?;
    w.write_all(&(kappa.len() as u32).to_le_bytes())?;
    w.write_all(kappa.as_bytes())?;
    w.write_all(&(set.level as u32).to_le_bytes())?;
    for x in set.root.values() {
        w.write_all(&x.to_le_bytes())?;
    }
    w.write_all(&(set.concrete.len() as u64).to_le_bytes())?;
    w.write_all(&(set.necklaces.len() as u64).to_le_bytes())?;
    w.write_all(&(nfam as u32).to_le_bytes())?;
    for m in &ws.concrete {
        put_mat(&mut w, m)?;
    }
    for (nk, m) in set.necklaces.iter().zip(&ws.necklaces) {
        put_mat(&mut w, m)?;
        for n in &nk.n_start {
            w.write_all(&n.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a cache file back; values are recomputed from the stored weights.
pub fn read_cache(path: &Path) -> Result<(CacheHeader, TripleSet<f64>)> {
    let mut r = BufReader::new(std::fs::File::open(path)?);
    if &take::<4>(&mut r)? != MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let version = get_u32(&mut r)?;
    if version != CACHE_VERSION {
        return Err(Error::Cache(format!("format version {version}, expected {CACHE_VERSION}")));
    }
    let packing = Packing::from_id(take::<1>(&mut r)?[0]).ok_or_else(|| Error::Cache("unknown packing".into()))?;
    let klen = get_u32(&mut r)? as usize;
    let mut kb = vec![0u8; klen];
    r.read_exact(&mut kb)?;
    let kappa = String::from_utf8(kb).map_err(|_| Error::Cache("κ is not UTF-8".into()))?;
    let level = get_u32(&mut r)?;
    let root = [get_f64(&mut r)?, get_f64(&mut r)?, get_f64(&mut r)?, get_f64(&mut r)?];
    let nconc = get_u64(&mut r)? as usize;
    let nneck = get_u64(&mut r)? as usize;
    let nfam = get_u32(&mut r)? as usize;
    if nfam != packing.scheme().families.len() {
        return Err(Error::Cache("family count does not match packing".into()));
    }
    let apply = |m: &Mat4<f64>| mat_vec(m, &root);
    let mut weights = Weights::default();
    let mut concrete = Vec::with_capacity(nconc);
    for _ in 0..nconc {
        let m = get_mat(&mut r)?;
        concrete.push(apply(&m));
        weights.concrete.push(m);
    }
    let mut necklaces = Vec::with_capacity(nneck);
    for _ in 0..nneck {
        let m = get_mat(&mut r)?;
        let n_start = (0..nfam).map(|_| get_u32(&mut r)).collect::<Result<Vec<_>>>()?;
        necklaces.push(Necklace { parent: apply(&m), n_start });
        weights.necklaces.push(m);
    }
    let header = CacheHeader { packing, kappa, level };
    let set = TripleSet {
        packing,
        root: Triple::with_d(root),
        kappa: None,
        level: level as usize,
        concrete,
        necklaces,
        weights: Some(weights),
    };
    Ok((header, set))
}

/// Diagnostic dump: one row per concrete triple and per family tail.
pub fn write_csv(path: &Path, set: &TripleSet<f64>) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["kind", "family", "n_start", "x", "y", "z", "d"])?;
    for v in &set.concrete {
        let row = [v[0], v[1], v[2], v[3]].map(|x| format!("{x:.17e}"));
        w.write_record(["concrete", "", ""].iter().map(|s| s.to_string()).chain(row))?;
    }
    for f in set.families() {
        let v = f.member(set.packing, f.n_start);
        let row = [v[0], v[1], v[2], v[3]].map(|x| format!("{x:.17e}"));
        let head = ["family".to_string(), f.family_id.to_string(), f.n_start.to_string()];
        w.write_record(head.into_iter().chain(row))?;
    }
    w.flush()?;
    Ok(())
}
