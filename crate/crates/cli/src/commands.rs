use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use ambient_cycles::io::{element_to_json, sig17};
use ambient_cycles::surfaces::coordinate_count;
use ambient_cycles::{
    classify_cloud, principal_persistence_measure, CoverPoint, Error, LiftedPointCloud, SearchConfig, Surface,
    SurfaceKind,
};
use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
struct DistanceReport {
    #[serde(serialize_with = "sig17::serialize")]
    distance: f64,
    minimizers: Vec<Value>,
    tied: bool,
}

pub fn dist(kind: SurfaceKind, config: SearchConfig, coords: &[f64], mut out: impl Write) -> Result<()> {
    let k = coordinate_count(kind);
    if coords.len() != 2 * k {
        bail!(Error::Input(format!(
            "{kind} needs {} coordinates ({k} per point), got {}",
            2 * k,
            coords.len()
        )));
    }
    let p = CoverPoint::from_coords(kind, &coords[..k])?;
    let q = CoverPoint::from_coords(kind, &coords[k..])?;
    let bd = Surface::with_config(kind, config).base_distance(&p, &q)?;
    let report = DistanceReport {
        distance: bd.distance,
        minimizers: bd.minimizers.iter().map(element_to_json).collect(),
        tied: bd.tied(),
    };
    serde_json::to_writer(&mut out, &report)?;
    writeln!(out)?;
    Ok(())
}

fn header(kind: SurfaceKind) -> &'static [&'static str] {
    match kind {
        SurfaceKind::Torus | SurfaceKind::KleinBottle => &["x", "y"],
        SurfaceKind::ProjectivePlane => &["x", "y", "z"],
        SurfaceKind::GenusTwo => &["re", "im"],
    }
}

/// Reads one lifted point per row; the header must name the surface's
/// coordinates in order.
pub fn read_points(kind: SurfaceKind, path: &Path) -> Result<Vec<CoverPoint>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let expected = header(kind);
    let found: Vec<String> = reader.headers()?.iter().map(str::to_ascii_lowercase).collect();
    if found != expected {
        bail!(Error::Input(format!(
            "{}: header should be {}, found {}",
            path.display(),
            expected.join(","),
            found.join(",")
        )));
    }
    let mut points = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let coords = record
            .iter()
            .map(|f| f.parse::<f64>())
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|e| Error::Input(format!("{}: row {}: {e}", path.display(), row + 1)))?;
        let p = CoverPoint::from_coords(kind, &coords).with_context(|| format!("{}: row {}", path.display(), row + 1))?;
        points.push(p);
    }
    if points.is_empty() {
        bail!(Error::Input(format!("{}: no points", path.display())));
    }
    Ok(points)
}

pub fn classify(
    kind: SurfaceKind,
    config: SearchConfig,
    input: &Path,
    epsilon: f64,
    output: Option<&Path>,
    stdout: impl Write,
) -> Result<()> {
    let points = read_points(kind, input)?;
    let cloud = LiftedPointCloud::new(Surface::with_config(kind, config), points)?;
    let report = classify_cloud(&cloud, epsilon)?.to_report();
    let mut out: Box<dyn Write> = match output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(stdout),
    };
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

pub fn ppm(kind: SurfaceKind, config: SearchConfig, samples: usize, seed: u64, dir: &Path) -> Result<()> {
    if samples == 0 {
        bail!(Error::Input("-n must be at least 1".into()));
    }
    std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    eprintln!("sampling {samples} quadruples on the {kind} (seed {seed})");
    let sample = principal_persistence_measure(&Surface::with_config(kind, config), samples, seed)?;
    eprintln!(
        "{} persistent, {} degenerate, {} skipped; phi_bar = {:.6}",
        sample.persistent, sample.degenerate, sample.skipped, sample.phi_bar
    );

    let path = dir.join("ppm.jsonl");
    let file = File::create(&path).with_context(|| format!("cannot create {}", path.display()))?;
    let mut w = BufWriter::new(file);
    sample.write_jsonl(&mut w).with_context(|| format!("cannot write {}", path.display()))?;
    w.flush().with_context(|| format!("cannot write {}", path.display()))?;

    let path = dir.join("summary.json");
    let file = File::create(&path).with_context(|| format!("cannot create {}", path.display()))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, &sample.summary())?;
    writeln!(w)?;
    w.flush().with_context(|| format!("cannot write {}", path.display()))?;
    eprintln!("wrote {}/ppm.jsonl and {}/summary.json", dir.display(), dir.display());
    Ok(())
}

pub fn surfaces(mut out: impl Write) -> Result<()> {
    writeln!(out, "{:<8} {:<6} {:<8} description", "name", "free", "torsion")?;
    for kind in SurfaceKind::ALL {
        writeln!(
            out,
            "{:<8} {:<6} {:<8} {}",
            kind.name(),
            kind.free_rank(),
            kind.torsion_rank(),
            kind.description()
        )?;
    }
    Ok(())
}
