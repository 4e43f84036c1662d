//! Parameter sweeps over the conic family `S^(α,β,γ)/(ax² + by² + cz²)`.
//!
//! Grid spec: `;`-separated fields, each `name=v1,v2,…`. Names are `alpha`,
//! `beta`, `gamma`, and either `abc` (triples `a:b:c`) or separate `a`, `b`,
//! `c` lists. Values are Gaussian rationals; `lo..hi` expands to the integers
//! in between. `family=commutative` sweeps `ℚ(i)[x,y,z]` instead, where
//! α, β, γ are ignored.
//!
//! Datasets are NDJSON, one record per grid point in grid order. Existing
//! records are reused by key, so an interrupted sweep resumes where it stopped.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use quadric_core::config::Config;
use quadric_core::gradedalg::Verdict;
use quadric_core::hypersurface::{commutative_conic, conic, conic_cover_check, ConicParams, CopySummary, QuadricInput};
use quadric_core::{par, Error, Scalar};

use crate::report::SCHEMA_VERSION;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Skew,
    Commutative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub family: Family,
    pub points: Vec<ConicParams>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    NonCentral,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRecord {
    pub schema_version: u32,
    pub key: String,
    pub family: Family,
    pub params: ConicParams,
    pub central: bool,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clifford_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ungraded_block_dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree0_block_dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graded_radical_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mcm_simple_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutative_clifford: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub in_copy_hypothesis: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copy: Option<CopySummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copy_check_passed: Option<bool>,
}

fn values(field: &str, text: &str) -> anyhow::Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let lo: i64 = lo.trim().parse().with_context(|| format!("{field}: bad range `{item}`"))?;
            let hi: i64 = hi.trim().parse().with_context(|| format!("{field}: bad range `{item}`"))?;
            out.extend((lo..=hi).map(Scalar::from));
        } else {
            out.push(item.parse().with_context(|| format!("{field}: bad value `{item}`"))?);
        }
    }
    if out.is_empty() {
        bail!("{field}: no values");
    }
    Ok(out)
}

impl Grid {
    pub fn parse(spec: &str) -> anyhow::Result<Grid> {
        let mut family = Family::Skew;
        let mut fields: HashMap<String, String> = HashMap::new();
        for part in spec.split([';', '\n']).map(str::trim).filter(|s| !s.is_empty() && !s.starts_with('#')) {
            let (name, rest) = part
                .split_once('=')
                .with_context(|| format!("grid field `{part}` is not `name=values`"))?;
            let name = name.trim().to_string();
            match name.as_str() {
                "family" => {
                    family = match rest.trim() {
                        "skew" => Family::Skew,
                        "commutative" => Family::Commutative,
                        other => bail!("unknown family `{other}`"),
                    }
                }
                "alpha" | "beta" | "gamma" | "a" | "b" | "c" | "abc" => {
                    if fields.insert(name.clone(), rest.to_string()).is_some() {
                        bail!("grid field `{name}` given twice");
                    }
                }
                other => bail!("unknown grid field `{other}`"),
            }
        }
        let zero = || vec![Scalar::from(0)];
        let list = |k: &str| fields.get(k).map(|t| values(k, t)).transpose();
        let (alphas, betas, gammas) = match family {
            Family::Skew => (
                list("alpha")?.unwrap_or_else(zero),
                list("beta")?.unwrap_or_else(zero),
                list("gamma")?.unwrap_or_else(zero),
            ),
            Family::Commutative => (zero(), zero(), zero()),
        };
        let triples: Vec<[Scalar; 3]> = match fields.get("abc") {
            Some(text) => {
                if ["a", "b", "c"].iter().any(|k| fields.contains_key(*k)) {
                    bail!("give either `abc` or `a`, `b`, `c`, not both");
                }
                text.split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|t| {
                        let parts: Vec<&str> = t.split(':').collect();
                        if parts.len() != 3 {
                            bail!("abc: `{t}` is not a triple a:b:c");
                        }
                        let v: Vec<Scalar> = parts
                            .iter()
                            .map(|p| p.trim().parse().with_context(|| format!("abc: bad value `{p}`")))
                            .collect::<anyhow::Result<_>>()?;
                        Ok([v[0].clone(), v[1].clone(), v[2].clone()])
                    })
                    .collect::<anyhow::Result<_>>()?
            }
            None => {
                let (a, b, c) = (list("a")?, list("b")?, list("c")?);
                if a.is_none() && b.is_none() && c.is_none() {
                    bail!("grid needs `abc` or at least one of `a`, `b`, `c`");
                }
                let (a, b, c) = (a.unwrap_or_else(zero), b.unwrap_or_else(zero), c.unwrap_or_else(zero));
                let mut t = Vec::new();
                for x in &a {
                    for y in &b {
                        for z in &c {
                            t.push([x.clone(), y.clone(), z.clone()]);
                        }
                    }
                }
                t
            }
        };
        let mut points = Vec::new();
        for alpha in &alphas {
            for beta in &betas {
                for gamma in &gammas {
                    for [a, b, c] in &triples {
                        if a.is_zero() && b.is_zero() && c.is_zero() {
                            continue;
                        }
                        points.push(ConicParams {
                            alpha: alpha.clone(),
                            beta: beta.clone(),
                            gamma: gamma.clone(),
                            a: a.clone(),
                            b: b.clone(),
                            c: c.clone(),
                        });
                    }
                }
            }
        }
        if points.is_empty() {
            bail!("grid is empty");
        }
        Ok(Grid { family, points })
    }

    pub fn key(&self, p: &ConicParams) -> String {
        match self.family {
            Family::Skew => format!("skew:{}", p.key()),
            Family::Commutative => format!("commutative:{}:{}:{}", p.a, p.b, p.c),
        }
    }

    fn quadric(&self, p: &ConicParams, cfg: &Config) -> quadric_core::Result<QuadricInput> {
        match self.family {
            Family::Skew => conic(p, cfg),
            Family::Commutative => commutative_conic(&p.a, &p.b, &p.c, cfg),
        }
    }

    pub fn record(&self, p: &ConicParams, cfg: &Config) -> AtlasRecord {
        let mut rec = AtlasRecord {
            schema_version: SCHEMA_VERSION,
            key: self.key(p),
            family: self.family,
            params: p.clone(),
            central: true,
            status: Status::Ok,
            error: None,
            regular: None,
            verdict: None,
            clifford_dim: None,
            ungraded_block_dims: None,
            degree0_block_dims: None,
            graded_radical_dim: None,
            mcm_simple_count: None,
            commutative_clifford: None,
            in_copy_hypothesis: None,
            copy: None,
            copy_check_passed: None,
        };
        let q = match self.quadric(p, cfg) {
            Ok(q) => q,
            Err(Error::NotCentral(_)) => {
                rec.central = false;
                rec.status = Status::NonCentral;
                return rec;
            }
            Err(e) => {
                rec.status = Status::Error;
                rec.error = Some(e.to_string());
                return rec;
            }
        };
        rec.regular = Some(q.regular);
        match conic_cover_check(&q, cfg) {
            Ok(check) => {
                let r = &check.report;
                rec.verdict = Some(r.verdict());
                rec.clifford_dim = Some(r.clifford_dim);
                rec.graded_radical_dim = Some(r.classification.evidence.graded_radical_dim);
                rec.ungraded_block_dims = Some(check.ungraded_block_dims.clone());
                rec.degree0_block_dims = Some(check.degree0_block_dims.clone());
                rec.mcm_simple_count = r.mcm_simple_count;
                rec.commutative_clifford = Some(check.commutative_clifford);
                rec.in_copy_hypothesis = Some(check.in_hypothesis);
                if check.in_hypothesis {
                    rec.copy_check_passed = Some(check.passed);
                }
                rec.copy = check.copy;
            }
            Err(e) => {
                rec.status = Status::Error;
                rec.error = Some(e.to_string());
            }
        }
        rec
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub points: usize,
    pub computed: usize,
    pub reused: usize,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    schema_version: u32,
    grid: &'a str,
    jobs: usize,
    parallel: bool,
    summary: &'a SweepSummary,
    started_unix: u64,
    finished_unix: u64,
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

/// Existing records by key, as raw lines; unparseable lines (a torn final write) are dropped.
fn existing(out: &Path) -> anyhow::Result<HashMap<String, String>> {
    let mut map = HashMap::new();
    if !out.exists() {
        return Ok(map);
    }
    let file = File::open(out).with_context(|| format!("cannot read {}", out.display()))?;
    for line in BufReader::new(file).lines() {
        let line = line?;
        if let Ok(rec) = serde_json::from_str::<AtlasRecord>(&line) {
            map.insert(rec.key, line);
        }
    }
    Ok(map)
}

/// Runs the sweep, appending records as chunks finish, then rewrites the file in grid order.
pub fn sweep(grid: &Grid, spec: &str, out: &Path, jobs: usize, cfg: &Config) -> anyhow::Result<SweepSummary> {
    let started = now();
    let mut have = existing(out)?;
    let missing: Vec<ConicParams> = grid
        .points
        .iter()
        .filter(|p| !have.contains_key(&grid.key(p)))
        .cloned()
        .collect();
    let summary = SweepSummary {
        points: grid.points.len(),
        computed: missing.len(),
        reused: grid.points.len() - missing.len(),
    };
    let mut log = OpenOptions::new()
        .create(true)
        .append(true)
        .open(out)
        .with_context(|| format!("cannot write {}", out.display()))?;
    let chunk = 4 * jobs.max(1);
    par::with_jobs(jobs, || -> anyhow::Result<()> {
        for batch in missing.chunks(chunk) {
            for rec in par::map(batch, |p| grid.record(p, cfg)) {
                let line = serde_json::to_string(&rec)?;
                writeln!(log, "{line}")?;
                have.insert(rec.key, line);
            }
            log.flush()?;
        }
        Ok(())
    })?;
    drop(log);

    let tmp = out.with_extension("ndjson.tmp");
    {
        let mut f = File::create(&tmp).with_context(|| format!("cannot write {}", tmp.display()))?;
        for p in &grid.points {
            writeln!(f, "{}", have[&grid.key(p)])?;
        }
        f.sync_all()?;
    }
    fs::rename(&tmp, out).with_context(|| format!("cannot replace {}", out.display()))?;

    let sidecar = Sidecar {
        schema_version: SCHEMA_VERSION,
        grid: spec,
        jobs,
        parallel: par::is_parallel(),
        summary: &summary,
        started_unix: started,
        finished_unix: now(),
    };
    let meta = out.with_extension("meta.json");
    fs::write(&meta, serde_json::to_string_pretty(&sidecar)?).with_context(|| format!("cannot write {}", meta.display()))?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_one_grid() {
        let g = Grid::parse("family=commutative; abc=1:0:0, 1:1:0, 1:1:1").unwrap();
        assert_eq!(g.points.len(), 3);
        assert_eq!(g.key(&g.points[1]), "commutative:1:1:0");
    }

    #[test]
    fn products_and_ranges() {
        let g = Grid::parse("alpha=0..1; beta=0,1/2; a=1; b=0..1; c=i").unwrap();
        assert_eq!(g.points.len(), 2 * 2 * 2);
        assert_eq!(g.points[0].c, Scalar::i());
        assert_eq!(g.key(&g.points[0]), "skew:0,0,0/1:0:1i");
    }

    #[test]
    fn zero_forms_are_skipped() {
        let g = Grid::parse("a=0..1; b=0; c=0").unwrap();
        assert_eq!(g.points.len(), 1);
    }

    #[test]
    fn bad_specs() {
        assert!(Grid::parse("alpha=0").is_err());
        assert!(Grid::parse("abc=1:2; a=1").is_err());
        assert!(Grid::parse("abc=1:2").is_err());
        assert!(Grid::parse("delta=1; a=1").is_err());
        assert!(Grid::parse("a=0").is_err());
    }
}
