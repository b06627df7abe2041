//! Verification campaigns over exhaustively enumerated (or seeded random)
//! instances, producing machine-readable [`ExperimentReport`]s.
//!
//! Every campaign enumerates its instances sequentially in a fixed order,
//! solves them on a worker pool, and keeps results in enumeration order, so
//! a report depends only on its parameters and never on `jobs`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::closed_forms::{
    self, caterpillar_upper_coloring, central_path, chi_path_orientation_min, chi_rooted, chi_star,
    directed_spine_coloring, gs_uniform_chi, path_min_is_extension,
};
use crate::coloring::{verify_dominator, Coloring};
use crate::error::{too_large, Error, Result};
use crate::generators::{
    self, caterpillar, complement_mask, free_trees, orient, orientations, CaterpillarSpec,
    GsScheme, GsSpec,
};
use crate::graph::{OrientedTree, RootedMode, Vertex};
use crate::solver::{brute_force_chi, solve_exact, SolveOptions, SolveResult};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CampaignOptions {
    /// Worker threads; 1 runs everything on the calling thread's pool.
    pub jobs: usize,
    pub solve: SolveOptions,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions {
            jobs: 1,
            solve: SolveOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub instance: OrientedTree,
    pub reason: String,
}

/// A coloring attached to an instance; re-checkable from these two fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub label: String,
    pub instance: OrientedTree,
    pub chi: usize,
    pub coloring: Coloring,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub instances_checked: usize,
    pub holds_at_this_scale: bool,
    pub counterexamples: Vec<Counterexample>,
    pub witnesses: Vec<WitnessRecord>,
    /// Observations that are reported rather than judged.
    pub findings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReversalRecord {
    pub id: usize,
    pub instance: OrientedTree,
    pub mask: u64,
    pub reversal_mask: u64,
    pub chi: usize,
    pub chi_reversed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafDeletionRecord {
    pub id: usize,
    pub instance: OrientedTree,
    pub leaf: Vertex,
    pub neighbor: Vertex,
    pub chi: usize,
    pub chi_deleted: usize,
    /// `chi - chi_deleted`; expected in {0, 1}.
    pub delta: i64,
    /// The leaf is the only out-neighbor of its neighbor, or the only source.
    pub sole_target_or_unique_source: bool,
    /// A source leaf whose deletion drops the value has a neighbor of
    /// in-degree exactly one (vacuously true when the premise fails).
    pub source_leaf_neighbor_in_degree_one: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarRecord {
    pub id: usize,
    pub m: usize,
    pub mask: u64,
    pub instance: OrientedTree,
    pub chi: usize,
    pub formula: usize,
    pub uniform: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedValue {
    pub mask: u64,
    pub out_root: Option<Vertex>,
    pub in_root: Option<Vertex>,
    pub chi: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GsRecord {
    pub id: usize,
    pub m: usize,
    pub k: usize,
    pub n: usize,
    pub orientations: u64,
    pub min_chi: usize,
    pub min_mask: u64,
    pub max_chi: usize,
    pub max_mask: u64,
    /// `3 + m(floor(k/2) - 1)`, conjectured minimum.
    pub conjectured_min: i64,
    /// `m(k-1) + 2`, conjectured maximum.
    pub conjectured_max: usize,
    pub min_agrees: bool,
    pub max_agrees: bool,
    /// Some rooted orientation attains the maximum.
    pub max_attained_by_rooted: bool,
    /// `m <= 2` makes the generalized star a path.
    pub degenerate_path: bool,
    pub rooted_values: Vec<RootedValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaterpillarRecord {
    pub id: usize,
    pub spec: CaterpillarSpec,
    pub instance: OrientedTree,
    pub spine: Vec<Vertex>,
    /// Spine vertex count.
    pub m: usize,
    pub chi: usize,
    pub spine_chi: usize,
    pub upper_colors: usize,
    pub spine_directed: bool,
    pub directed_spine_colors: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathMinimumRecord {
    pub n: usize,
    pub orientations: u64,
    pub min_chi: usize,
    pub min_mask: u64,
    pub formula: usize,
    /// `n` is below the range of the piecewise formula.
    pub extension: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedFormulaRecord {
    pub id: usize,
    pub instance: OrientedTree,
    pub mode: String,
    pub root: Vertex,
    pub directed_leaves: usize,
    pub formula: usize,
    pub chi: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub id: usize,
    pub instance: OrientedTree,
    pub chi: usize,
    pub brute_force: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationRecord {
    pub mask: u64,
    pub instance: OrientedTree,
    pub chi: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Reversal(ReversalRecord),
    LeafDeletion(LeafDeletionRecord),
    Star(StarRecord),
    GeneralizedStar(GsRecord),
    Caterpillar(CaterpillarRecord),
    PathMinimum(PathMinimumRecord),
    RootedFormula(RootedFormulaRecord),
    Oracle(OracleRecord),
    Orientation(OrientationRecord),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub campaign: String,
    pub params: Value,
    pub version: u32,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl ExperimentReport {
    fn new(
        campaign: &str,
        params: Value,
        records: Vec<Record>,
        counterexamples: Vec<Counterexample>,
    ) -> Self {
        ExperimentReport {
            campaign: campaign.to_string(),
            params,
            version: REPORT_VERSION,
            summary: Summary {
                instances_checked: records.len(),
                holds_at_this_scale: counterexamples.is_empty(),
                counterexamples,
                witnesses: Vec::new(),
                findings: Vec::new(),
            },
            records,
        }
    }

    /// Re-verifies every witness coloring against its encoded instance and
    /// checks the recorded value matches the coloring. Returns the labels of
    /// witnesses that fail.
    pub fn revalidate_witnesses(&self) -> Vec<String> {
        self.summary
            .witnesses
            .iter()
            .filter(|w| {
                let ok = verify_dominator(&w.instance, &w.coloring).is_ok()
                    && w.coloring.num_colors() == w.chi;
                !ok
            })
            .map(|w| w.label.clone())
            .collect()
    }
}

fn pool_map<I, R, F>(items: &[I], jobs: usize, f: F) -> Result<Vec<R>>
where
    I: Sync,
    R: Send,
    F: Fn(&I) -> Result<R> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::SpecInvalid(format!("cannot start worker pool: {e}")))?;
    pool.install(|| items.par_iter().map(&f).collect())
}

fn solve(t: &OrientedTree, opts: &CampaignOptions) -> Result<SolveResult> {
    solve_exact(t, &opts.solve)
}

fn witness(label: String, instance: &OrientedTree, result: &SolveResult) -> WitnessRecord {
    WitnessRecord {
        label,
        instance: instance.clone(),
        chi: result.chi,
        coloring: result.certificate.coloring.clone(),
    }
}

fn all_free_trees(min_n: usize, max_n: usize) -> Result<Vec<OrientedTree>> {
    let mut out = Vec::new();
    for n in min_n..=max_n {
        out.extend(free_trees(n)?);
    }
    Ok(out)
}

/// Solves each orientation together with its reversal, over half the masks
/// of every free tree up to `max_n` (the other half are the reversals).
pub fn check_reversal_invariance(max_n: usize, opts: &CampaignOptions) -> Result<ExperimentReport> {
    too_large("max_n", max_n, 10)?;
    let mut instances = Vec::new();
    for base in all_free_trees(1, max_n)? {
        let n = base.n();
        let half = if n == 1 { 1 } else { 1u64 << (n - 2) };
        for mask in 0..half {
            instances.push((
                orient(&base, mask),
                mask,
                if n == 1 { 0 } else { complement_mask(n, mask) },
            ));
        }
    }
    let solved = pool_map(&instances, opts.jobs, |(t, _, _)| {
        Ok((solve(t, opts)?.chi, solve(&t.reverse(), opts)?.chi))
    })?;
    let mut records = Vec::with_capacity(instances.len());
    let mut counterexamples = Vec::new();
    for (id, ((t, mask, reversal_mask), (chi, chi_reversed))) in
        instances.into_iter().zip(solved).enumerate()
    {
        if chi != chi_reversed {
            counterexamples.push(Counterexample {
                instance: t.clone(),
                reason: format!("value {chi} but reversal has {chi_reversed}"),
            });
        }
        records.push(Record::Reversal(ReversalRecord {
            id,
            instance: t,
            mask,
            reversal_mask,
            chi,
            chi_reversed,
        }));
    }
    Ok(ExperimentReport::new(
        "reversal_invariance",
        json!({ "max_n": max_n }),
        records,
        counterexamples,
    ))
}

/// Evaluates the leaf-deletion predicates for one `(tree, leaf)` pair.
pub fn leaf_deletion_record(
    id: usize,
    t: &OrientedTree,
    leaf: Vertex,
    chi: usize,
    chi_deleted: usize,
) -> LeafDeletionRecord {
    let neighbor = t.neighbors(leaf).next().expect("a leaf has a neighbor");
    let delta = chi as i64 - chi_deleted as i64;
    let sole_target = t.out_neighbors(neighbor) == [leaf];
    let unique_source = t.sources() == [leaf];
    let premise = delta == 1 && t.in_degree(leaf) == 0;
    LeafDeletionRecord {
        id,
        instance: t.clone(),
        leaf,
        neighbor,
        chi,
        chi_deleted,
        delta,
        sole_target_or_unique_source: sole_target || unique_source,
        source_leaf_neighbor_in_degree_one: !premise || t.in_degree(neighbor) == 1,
    }
}

/// Problems with a leaf-deletion record, if any.
pub fn leaf_deletion_violations(r: &LeafDeletionRecord) -> Vec<String> {
    let mut out = Vec::new();
    if !(0..=1).contains(&r.delta) {
        out.push(format!(
            "deleting leaf {} changes the value by {}",
            r.leaf, r.delta
        ));
    }
    if r.delta == 1 && !r.sole_target_or_unique_source {
        out.push(format!(
            "deleting leaf {} drops the value, but it is neither the sole out-neighbor of {} nor the unique source",
            r.leaf, r.neighbor
        ));
    }
    if r.delta != 1 && r.sole_target_or_unique_source {
        out.push(format!(
            "leaf {} is the sole out-neighbor of {} or the unique source, but deleting it keeps the value",
            r.leaf, r.neighbor
        ));
    }
    if !r.source_leaf_neighbor_in_degree_one {
        out.push(format!(
            "source leaf {} drops the value but its neighbor {} does not have in-degree 1",
            r.leaf, r.neighbor
        ));
    }
    out
}

pub fn check_leaf_deletion(max_n: usize, opts: &CampaignOptions) -> Result<ExperimentReport> {
    if max_n < 2 {
        return Err(Error::SpecInvalid("leaf deletion needs max_n >= 2".into()));
    }
    too_large("max_n", max_n, 9)?;
    let mut trees = Vec::new();
    for base in all_free_trees(2, max_n)? {
        trees.extend(orientations(&base)?.map(|(_, t)| t));
    }
    let per_tree = pool_map(&trees, opts.jobs, |t| {
        let chi = solve(t, opts)?.chi;
        t.underlying_leaves()
            .into_iter()
            .map(|leaf| {
                let (smaller, _) = t.delete_leaf(leaf)?;
                Ok((leaf, chi, solve(&smaller, opts)?.chi))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut records = Vec::new();
    let mut counterexamples = Vec::new();
    for (t, leaves) in trees.iter().zip(per_tree) {
        for (leaf, chi, chi_deleted) in leaves {
            let record = leaf_deletion_record(records.len(), t, leaf, chi, chi_deleted);
            for reason in leaf_deletion_violations(&record) {
                counterexamples.push(Counterexample {
                    instance: t.clone(),
                    reason,
                });
            }
            records.push(Record::LeafDeletion(record));
        }
    }
    Ok(ExperimentReport::new(
        "leaf_deletion",
        json!({ "max_n": max_n }),
        records,
        counterexamples,
    ))
}

/// Every orientation of every generalized star with `mk + 1 <= n_cap`:
/// extremal values with witnesses, compared against the conjectured
/// minimum and maximum. Disagreements are findings, never counterexamples.
pub fn explore_conjecture_gs(
    m_max: usize,
    k_max: usize,
    n_cap: usize,
    opts: &CampaignOptions,
) -> Result<ExperimentReport> {
    too_large("n_cap", n_cap, 10)?;
    let mut specs = Vec::new();
    for m in 1..=m_max {
        for k in 1..=k_max {
            if m * k < n_cap {
                specs.push((m, k));
            }
        }
    }
    let mut jobs_list = Vec::new();
    for &(m, k) in &specs {
        let base = generators::gs(&GsSpec::new(m, k, GsScheme::OutRootCenter))?;
        jobs_list.extend(orientations(&base)?.map(|(mask, t)| ((m, k), mask, t)));
    }
    let solved = pool_map(&jobs_list, opts.jobs, |(_, _, t)| solve(t, opts))?;

    let mut records = Vec::new();
    let mut witnesses = Vec::new();
    let mut findings = Vec::new();
    let mut cursor = 0;
    for &(m, k) in &specs {
        let count = 1u64 << (m * k);
        let group = cursor..cursor + count as usize;
        cursor = group.end;
        let pick = |better: fn(usize, usize) -> bool| {
            let mut best = group.start;
            for i in group.clone() {
                if better(solved[i].chi, solved[best].chi) {
                    best = i;
                }
            }
            best
        };
        let min_i = pick(|a, b| a < b);
        let max_i = pick(|a, b| a > b);
        let rooted_values: Vec<RootedValue> = group
            .clone()
            .filter_map(|i| {
                let class = jobs_list[i].2.classify_rooted();
                (class.out_root.is_some() || class.in_root.is_some()).then(|| RootedValue {
                    mask: jobs_list[i].1,
                    out_root: class.out_root,
                    in_root: class.in_root,
                    chi: solved[i].chi,
                })
            })
            .collect();
        let min_chi = solved[min_i].chi;
        let max_chi = solved[max_i].chi;
        let conjectured_min = 3 + m as i64 * ((k / 2) as i64 - 1);
        let conjectured_max = gs_uniform_chi(m, k);
        let record = GsRecord {
            id: records.len(),
            m,
            k,
            n: m * k + 1,
            orientations: count,
            min_chi,
            min_mask: jobs_list[min_i].1,
            max_chi,
            max_mask: jobs_list[max_i].1,
            conjectured_min,
            conjectured_max,
            min_agrees: min_chi as i64 == conjectured_min,
            max_agrees: max_chi == conjectured_max,
            max_attained_by_rooted: rooted_values.iter().any(|r| r.chi == max_chi),
            degenerate_path: m <= 2,
            rooted_values,
        };
        if !record.min_agrees {
            findings.push(format!(
                "GS(m={m},k={k}): minimum {min_chi} differs from conjectured {conjectured_min}"
            ));
        }
        if !record.max_agrees {
            findings.push(format!(
                "GS(m={m},k={k}): maximum {max_chi} differs from conjectured {conjectured_max}"
            ));
        }
        witnesses.push(witness(
            format!("gs m={m} k={k} min"),
            &jobs_list[min_i].2,
            &solved[min_i],
        ));
        witnesses.push(witness(
            format!("gs m={m} k={k} max"),
            &jobs_list[max_i].2,
            &solved[max_i],
        ));
        records.push(Record::GeneralizedStar(record));
    }
    let mut report = ExperimentReport::new(
        "conjecture_gs",
        json!({ "m_max": m_max, "k_max": k_max, "n_cap": n_cap }),
        records,
        Vec::new(),
    );
    report.summary.witnesses = witnesses;
    report.summary.findings = findings;
    Ok(report)
}

pub fn check_star_proposition(m_max: usize, opts: &CampaignOptions) -> Result<ExperimentReport> {
    too_large("m_max", m_max, 10)?;
    let instances: Vec<(usize, u64)> = (1..=m_max)
        .flat_map(|m| (0..1u64 << m).map(move |mask| (m, mask)))
        .collect();
    let solved = pool_map(&instances, opts.jobs, |&(m, mask)| {
        let formula = chi_star(m, mask);
        Ok((solve(&formula.tree, opts)?.chi, formula))
    })?;
    let mut records = Vec::new();
    let mut counterexamples = Vec::new();
    for (id, (&(m, mask), (chi, formula))) in instances.iter().zip(solved).enumerate() {
        let full = (1u64 << m) - 1;
        let uniform = mask == 0 || mask == full;
        if !(2..=3).contains(&chi) || chi != formula.chi || (chi == 2) != uniform {
            counterexamples.push(Counterexample {
                instance: formula.tree.clone(),
                reason: format!("value {chi}, formula {}, uniform {uniform}", formula.chi),
            });
        }
        records.push(Record::Star(StarRecord {
            id,
            m,
            mask,
            instance: formula.tree,
            chi,
            formula: formula.chi,
            uniform,
        }));
    }
    Ok(ExperimentReport::new(
        "star",
        json!({ "m_max": m_max }),
        records,
        counterexamples,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaterpillarRanges {
    pub spine_min: usize,
    pub spine_max: usize,
    pub max_n: usize,
}

impl Default for CaterpillarRanges {
    fn default() -> Self {
        CaterpillarRanges {
            spine_min: 2,
            spine_max: 9,
            max_n: 12,
        }
    }
}

/// Seeded random caterpillar spec within `ranges`.
pub fn sample_caterpillar(rng: &mut impl Rng, ranges: &CaterpillarRanges) -> CaterpillarSpec {
    let spine_len = rng.gen_range(ranges.spine_min..=ranges.spine_max);
    let mut legs = Vec::new();
    if spine_len >= 3 {
        let room = ranges.max_n.saturating_sub(spine_len);
        let total = rng.gen_range(0..=room);
        let mut placed = vec![0usize; spine_len];
        for _ in 0..total {
            placed[rng.gen_range(1..spine_len - 1)] += 1;
        }
        legs = placed
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .collect();
    }
    let leg_total: usize = legs.iter().map(|&(_, c)| c).sum();
    // A quarter of the samples keep the spine directed.
    let spine_mask = if rng.gen_ratio(1, 4) {
        0
    } else {
        rng.gen::<u64>() & ((1u64 << (spine_len - 1)) - 1)
    };
    let leg_mask = rng.gen::<u64>() & ((1u64 << leg_total) - 1);
    CaterpillarSpec {
        spine_len,
        legs,
        spine_mask,
        leg_mask,
    }
}

pub fn check_caterpillar_bounds(
    samples: usize,
    seed: u64,
    ranges: &CaterpillarRanges,
    opts: &CampaignOptions,
) -> Result<ExperimentReport> {
    if ranges.spine_min == 0 || ranges.spine_min > ranges.spine_max {
        return Err(Error::SpecInvalid(format!("bad spine range {ranges:?}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut specs = Vec::new();
    let mut skipped = 0usize;
    for _ in 0..samples {
        let spec = sample_caterpillar(&mut rng, ranges);
        if spec.n() > 12 {
            skipped += 1;
        } else {
            specs.push(spec);
        }
    }
    let checked = pool_map(&specs, opts.jobs, |spec| {
        let t = caterpillar(spec)?;
        let view = central_path(&t)?;
        let chi = solve(&t, opts)?.chi;
        let spine_chi = solve(&view.spine_tree(&t)?, opts)?.chi;
        let upper = caterpillar_upper_coloring(&t)?;
        let directed = match directed_spine_coloring(&t) {
            Ok(cert) => Some(cert.num_colors()),
            Err(Error::SpineNotDirected) => None,
            Err(e) => return Err(e),
        };
        Ok((t, view, chi, spine_chi, upper.num_colors(), directed))
    })?;
    let mut records = Vec::new();
    let mut counterexamples = Vec::new();
    for (id, (spec, (t, view, chi, spine_chi, upper_colors, directed))) in
        specs.into_iter().zip(checked).enumerate()
    {
        let m = view.m();
        let mut problems = Vec::new();
        if spine_chi > chi {
            problems.push(format!("spine value {spine_chi} exceeds tree value {chi}"));
        }
        if chi > upper_colors || upper_colors > 2 * m - 1 {
            problems.push(format!(
                "value {chi}, construction {upper_colors}, bound {}",
                2 * m - 1
            ));
        }
        if let Some(colors) = directed {
            if chi != m || colors != m {
                problems.push(format!(
                    "directed spine of {m} vertices but value {chi}, construction {colors}"
                ));
            }
        }
        counterexamples.extend(problems.into_iter().map(|reason| Counterexample {
            instance: t.clone(),
            reason,
        }));
        records.push(Record::Caterpillar(CaterpillarRecord {
            id,
            spec,
            instance: t,
            spine: view.spine,
            m,
            chi,
            spine_chi,
            upper_colors,
            spine_directed: directed.is_some(),
            directed_spine_colors: directed,
        }));
    }
    let mut report = ExperimentReport::new(
        "caterpillar",
        json!({
            "samples": samples,
            "seed": seed,
            "spine_min": ranges.spine_min,
            "spine_max": ranges.spine_max,
            "max_n": ranges.max_n,
        }),
        records,
        counterexamples,
    );
    if skipped > 0 {
        report
            .summary
            .findings
            .push(format!("skipped {skipped} oversized samples"));
    }
    Ok(report)
}

/// Minimum over all orientations of each path `P_n`, `min_n <= n <= max_n`,
/// against the piecewise formula.
pub fn check_path_minimum(
    min_n: usize,
    max_n: usize,
    opts: &CampaignOptions,
) -> Result<ExperimentReport> {
    too_large("max_n", max_n, 16)?;
    let min_n = min_n.max(1);
    let mut instances = Vec::new();
    for n in min_n..=max_n {
        instances.extend(orientations(&generators::path(n))?.map(|(mask, t)| (n, mask, t)));
    }
    let solved = pool_map(&instances, opts.jobs, |(_, _, t)| solve(t, opts))?;
    let mut records = Vec::new();
    let mut counterexamples = Vec::new();
    let mut witnesses = Vec::new();
    for n in min_n..=max_n {
        let (best, result) = instances
            .iter()
            .zip(&solved)
            .filter(|((pn, _, _), _)| *pn == n)
            .min_by_key(|((_, mask, _), r)| (r.chi, *mask))
            .expect("every path has an orientation");
        let formula = chi_path_orientation_min(n);
        if result.chi != formula {
            counterexamples.push(Counterexample {
                instance: best.2.clone(),
                reason: format!("minimum {} but formula gives {formula}", result.chi),
            });
        }
        witnesses.push(witness(format!("path n={n} min"), &best.2, result));
        records.push(Record::PathMinimum(PathMinimumRecord {
            n,
            orientations: 1 << (n - 1),
            min_chi: result.chi,
            min_mask: best.1,
            formula,
            extension: path_min_is_extension(n),
        }));
    }
    let mut report = ExperimentReport::new(
        "path_minimum",
        json!({ "min_n": min_n, "max_n": max_n }),
        records,
        counterexamples,
    );
    report.summary.witnesses = witnesses;
    Ok(report)
}

/// Orients `base` away from `root`.
pub fn rooted_orientation(base: &OrientedTree, root: Vertex) -> OrientedTree {
    let mut arcs = Vec::with_capacity(base.n() - 1);
    let mut stack = vec![(root, usize::MAX)];
    while let Some((v, parent)) = stack.pop() {
        for u in base.neighbors(v).filter(|&u| u != parent) {
            arcs.push((v, u));
            stack.push((u, v));
        }
    }
    OrientedTree::new(base.n(), arcs).expect("rerooting keeps a tree")
}

/// Every free tree up to `max_n`, rooted at every vertex, in both senses:
/// the solver value against `n - l + 1`.
pub fn check_rooted_formula(max_n: usize, opts: &CampaignOptions) -> Result<ExperimentReport> {
    too_large("max_n", max_n, 12)?;
    let mut instances = Vec::new();
    for base in all_free_trees(1, max_n)? {
        for root in 0..base.n() {
            let out = rooted_orientation(&base, root);
            let inward = out.reverse();
            instances.push((out, RootedMode::OutTree, root));
            instances.push((inward, RootedMode::InTree, root));
        }
    }
    let solved = pool_map(&instances, opts.jobs, |(t, mode, _)| {
        Ok((
            t.directed_leaf_count(*mode)?,
            chi_rooted(t)?,
            solve(t, opts)?.chi,
        ))
    })?;
    let mut records = Vec::new();
    let mut counterexamples = Vec::new();
    for (id, ((t, mode, root), (directed_leaves, formula, chi))) in
        instances.into_iter().zip(solved).enumerate()
    {
        let expected = t.n() - directed_leaves + 1;
        if chi != expected || formula != expected {
            counterexamples.push(Counterexample {
                instance: t.clone(),
                reason: format!("{mode} rooted at {root}: value {chi}, n - l + 1 = {expected}"),
            });
        }
        records.push(Record::RootedFormula(RootedFormulaRecord {
            id,
            instance: t,
            mode: mode.to_string(),
            root,
            directed_leaves,
            formula,
            chi,
        }));
    }
    Ok(ExperimentReport::new(
        "rooted_formula",
        json!({ "max_n": max_n }),
        records,
        counterexamples,
    ))
}

/// Branch-and-bound against brute force on every orientation of every free
/// tree up to `max_n`.
pub fn check_oracle(max_n: usize, opts: &CampaignOptions) -> Result<ExperimentReport> {
    too_large("max_n", max_n, 9)?;
    let mut trees = Vec::new();
    for base in all_free_trees(1, max_n)? {
        trees.extend(orientations(&base)?.map(|(_, t)| t));
    }
    let solved = pool_map(&trees, opts.jobs, |t| {
        Ok((solve(t, opts)?.chi, brute_force_chi(t)?))
    })?;
    let mut records = Vec::new();
    let mut counterexamples = Vec::new();
    for (id, (t, (chi, brute_force))) in trees.into_iter().zip(solved).enumerate() {
        if chi != brute_force {
            counterexamples.push(Counterexample {
                instance: t.clone(),
                reason: format!("branch-and-bound {chi}, brute force {brute_force}"),
            });
        }
        records.push(Record::Oracle(OracleRecord {
            id,
            instance: t,
            chi,
            brute_force,
        }));
    }
    Ok(ExperimentReport::new(
        "oracle",
        json!({ "max_n": max_n }),
        records,
        counterexamples,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrientationSweep {
    Min,
    Max,
    All,
}

/// Every orientation of the tree underlying `t`. `Min`/`Max` keep only the
/// extremal record (smallest mask on ties) and attach its witness.
pub fn sweep_orientations(
    t: &OrientedTree,
    which: OrientationSweep,
    opts: &CampaignOptions,
) -> Result<ExperimentReport> {
    let all: Vec<(u64, OrientedTree)> = orientations(t)?.collect();
    let solved = pool_map(&all, opts.jobs, |(_, o)| solve(o, opts))?;
    let params = json!({ "base": t.encode(), "sweep": which });
    let pick = |want_max: bool| {
        (0..all.len())
            .min_by_key(|&i| {
                let chi = solved[i].chi as i64;
                (if want_max { -chi } else { chi }, all[i].0)
            })
            .expect("at least one orientation")
    };
    let chosen: Vec<usize> = match which {
        OrientationSweep::All => (0..all.len()).collect(),
        OrientationSweep::Min => vec![pick(false)],
        OrientationSweep::Max => vec![pick(true)],
    };
    let records = chosen
        .iter()
        .map(|&i| {
            Record::Orientation(OrientationRecord {
                mask: all[i].0,
                instance: all[i].1.clone(),
                chi: solved[i].chi,
            })
        })
        .collect();
    let mut report = ExperimentReport::new("orientations", params, records, Vec::new());
    report.summary.instances_checked = all.len();
    if which != OrientationSweep::All {
        let i = chosen[0];
        report.summary.witnesses.push(witness(
            format!("{which:?}").to_lowercase(),
            &all[i].1,
            &solved[i],
        ));
    }
    Ok(report)
}

/// Layered generalized-star constructions for every `(m, k)` with even `k`
/// and `mk + 1 <= n_cap`; each must verify with exactly the bound's colors.
pub fn check_layered_constructions(
    n_cap: usize,
) -> Result<Vec<(usize, usize, closed_forms::LayeredGs)>> {
    let mut out = Vec::new();
    for k in (2..n_cap).step_by(2) {
        for m in 1..n_cap {
            if m * k < n_cap {
                out.push((m, k, closed_forms::build_layered_gs(m, k)?));
            }
        }
    }
    Ok(out)
}
