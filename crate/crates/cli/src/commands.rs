//! The six subcommands. Each builds a complete document, writes it to the
//! configured destination, and reports failures through the exit-status
//! contract. Human-facing progress summaries go to standard error so the
//! document stream stays byte-clean.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use skew_howe::character::{
    verify_jm_partial_trace, verify_p_independence_all, verify_pair_conjugation,
    verify_restriction, CharacterRow,
};
use skew_howe::dims::{binomial, f_dim, gl_dim, verify_rect_content_identity};
use skew_howe::measure::{
    constant_c, measure_lhs, measure_rhs, sample_chain, sample_via_syt, tv_distance,
    EmpiricalCounts, ExactSampler,
};
use skew_howe::partition::{complement, enumerate};
use skew_howe::rng::derive_seed;
use skew_howe::shape::{rescale, Profile, ProfileStats};
use skew_howe::tableau::{complement_ssyt, enumerate_ssyt};
use skew_howe::{Error, Partition, Rectangle};

use crate::render::{
    finish_json, measure_string, partition_field, partition_value, ratio_value, shape_svg,
};
use crate::{
    emit, require_format, validate_grid, BijectionArgs, CharacterArgs, Failure, Format,
    SampleArgs, SamplerKind, ShapeArgs, TableArgs, VerifyArgs,
};

/// Largest total tableau count the bijection command will enumerate.
const BIJECTION_TABLEAU_CAP: u64 = 200_000;

/// Overlaid sample staircases drawn in the shape SVG.
const SVG_OVERLAYS: u64 = 20;

struct Check {
    name: &'static str,
    p: usize,
    lhs: String,
    rhs: String,
}

impl Check {
    fn equal(&self) -> bool {
        self.lhs == self.rhs
    }

    fn value(&self) -> Value {
        json!({
            "name": self.name,
            "p": self.p,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "equal": self.equal(),
        })
    }
}

/// Identity checks for one power: measure equality, normalization, the
/// constant ratio, complement symmetry of principal Schur values, and the
/// rectangle content identity. All comparisons are exact.
fn checks_for_power(m: usize, n: usize, p: usize) -> Result<Vec<Check>, Failure> {
    let rect = Rectangle::new(m, n)?;
    let lhs = measure_lhs(m, n, p)?;
    let rhs = measure_rhs(m, n, p)?;
    let mut checks = vec![Check {
        name: "measure-equality",
        p,
        lhs: measure_string(&lhs),
        rhs: measure_string(&rhs),
    }];

    let total: BigRational = rhs.atoms().iter().map(|(_, w)| w.clone()).sum();
    checks.push(Check {
        name: "normalization",
        p,
        lhs: total.to_string(),
        rhs: "1".into(),
    });

    let expected = BigRational::new(
        f_dim(&rect.to_partition()).into(),
        binomial(m * n, p).into(),
    );
    checks.push(Check {
        name: "constant-ratio",
        p,
        lhs: constant_c(m, n, p)?.to_string(),
        rhs: expected.to_string(),
    });

    let shapes = enumerate(rect, p)?;
    let dims: Vec<String> = shapes.iter().map(|nu| gl_dim(nu, m).to_string()).collect();
    let complement_dims: Vec<String> = shapes
        .iter()
        .map(|nu| Ok(gl_dim(&complement(nu, rect)?, m).to_string()))
        .collect::<Result<_, Error>>()?;
    checks.push(Check {
        name: "complement-schur-symmetry",
        p,
        lhs: format!("[{}]", dims.join(", ")),
        rhs: format!("[{}]", complement_dims.join(", ")),
    });

    let (content_side, hook_side) = verify_rect_content_identity(rect);
    checks.push(Check {
        name: "rectangle-content-identity",
        p,
        lhs: content_side.to_string(),
        rhs: hook_side.to_string(),
    });

    Ok(checks)
}

pub(crate) fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    validate_grid(&args.grid, args.p)?;
    require_format(args.format, &[Format::Json], "verify")?;
    let (m, n) = (args.grid.m, args.grid.n);

    let powers: Vec<usize> = match args.p {
        Some(p) => vec![p],
        None => (0..=m * n).collect(),
    };
    let mut checks = Vec::new();
    for &p in &powers {
        checks.extend(checks_for_power(m, n, p)?);
    }
    let all_equal = checks.iter().all(Check::equal);

    let report = json!({
        "command": "verify",
        "m": m,
        "n": n,
        "p": args.p,
        "checks": checks.iter().map(Check::value).collect::<Vec<_>>(),
        "all_equal": all_equal,
    });
    emit(&args.out, &finish_json(&report))?;

    if all_equal {
        Ok(())
    } else {
        let failed: Vec<String> = checks
            .iter()
            .filter(|c| !c.equal())
            .map(|c| format!("{} at p={}", c.name, c.p))
            .collect();
        Err(Failure::Mismatch(failed.join("; ")))
    }
}

pub(crate) fn cmd_table(args: TableArgs) -> Result<(), Failure> {
    validate_grid(&args.grid, Some(args.p))?;
    require_format(args.format, &[Format::Json, Format::Csv], "table")?;
    let (m, n, p) = (args.grid.m, args.grid.n, args.p);
    let measure = measure_rhs(m, n, p)?;

    let content = match args.format {
        Format::Json => {
            let atoms: Vec<Value> = measure
                .atoms()
                .iter()
                .map(|(lambda, weight)| {
                    json!({
                        "partition": partition_value(lambda),
                        "weight": ratio_value(weight),
                    })
                })
                .collect();
            finish_json(&json!({
                "command": "table",
                "m": m,
                "n": n,
                "p": p,
                "atom_count": atoms.len(),
                "atoms": atoms,
            }))
        }
        Format::Csv => {
            let mut csv = String::from("partition,weight_num,weight_den,weight_float\n");
            for (lambda, weight) in measure.atoms() {
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    partition_field(lambda),
                    weight.numer(),
                    weight.denom(),
                    weight.to_f64().unwrap_or(f64::NAN)
                ));
            }
            csv
        }
        Format::Svg => unreachable!("rejected above"),
    };
    emit(&args.out, &content)
}

fn draw_one(
    sampler: SamplerKind,
    m: usize,
    n: usize,
    p: usize,
    exact: Option<&ExactSampler>,
    rng: &mut ChaCha8Rng,
) -> Result<Partition, Error> {
    match sampler {
        SamplerKind::Exact => Ok(exact
            .expect("exact sampler is constructed before drawing")
            .sample(rng)),
        SamplerKind::Chain => sample_chain(m, n, p, rng),
        SamplerKind::Syt => sample_via_syt(m, n, p, rng),
    }
}

pub(crate) fn cmd_sample(args: SampleArgs) -> Result<(), Failure> {
    validate_grid(&args.grid, Some(args.p))?;
    require_format(args.format, &[Format::Json, Format::Csv], "sample")?;
    if args.samples == 0 {
        return Err(Failure::Usage("need --samples >= 1".into()));
    }
    let (m, n, p) = (args.grid.m, args.grid.n, args.p);

    // The exact reference measure doubles as the exact sampler's table; it
    // exists only under the support cap. The two stochastic samplers have no
    // such cap, so for them an out-of-cap reference just disables the TV
    // summary instead of failing the run.
    let reference = match measure_rhs(m, n, p) {
        Ok(measure) => Some(measure),
        Err(Error::Resource(msg)) => {
            if args.sampler == SamplerKind::Exact {
                return Err(Failure::Resource(msg));
            }
            None
        }
        Err(other) => return Err(other.into()),
    };
    let exact_sampler = match args.sampler {
        SamplerKind::Exact => Some(ExactSampler::new(
            reference.as_ref().expect("cap already enforced"),
        )),
        _ => None,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(args.seed, 0));
    let mut counts = EmpiricalCounts::new(args.seed);
    let mut draws = Vec::with_capacity(args.samples as usize);
    for _ in 0..args.samples {
        let lambda = draw_one(args.sampler, m, n, p, exact_sampler.as_ref(), &mut rng)?;
        counts.record(lambda.clone());
        draws.push(lambda);
    }

    let tv = match &reference {
        Some(measure) => Some(tv_distance(&counts, measure)?),
        None => None,
    };

    let content = match args.format {
        Format::Json => {
            let count_rows: Vec<Value> = counts
                .counts()
                .map(|(lambda, k)| json!({ "partition": partition_value(lambda), "count": k }))
                .collect();
            finish_json(&json!({
                "command": "sample",
                "m": m,
                "n": n,
                "p": p,
                "sampler": args.sampler.label(),
                "seed": args.seed,
                "samples": args.samples,
                "draws": draws.iter().map(partition_value).collect::<Vec<_>>(),
                "summary": {
                    "counts": count_rows,
                    "tv_distance": tv.as_ref().map(ratio_value),
                    "note": if tv.is_some() {
                        "tv_distance compares the empirical law with the exact measure"
                    } else {
                        "exact reference unavailable at this size; no tv_distance"
                    },
                },
            }))
        }
        Format::Csv => {
            let mut csv = String::from("index,partition\n");
            for (idx, lambda) in draws.iter().enumerate() {
                csv.push_str(&format!("{},{}\n", idx + 1, partition_field(lambda)));
            }
            csv
        }
        Format::Svg => unreachable!("rejected above"),
    };
    emit(&args.out, &content)?;

    let tv_text = match &tv {
        Some(d) => format!("{} ~ {:.5}", d, d.to_f64().unwrap_or(f64::NAN)),
        None => "unavailable (exact support cap exceeded)".into(),
    };
    eprintln!(
        "drew {} samples at (m={m}, n={n}, p={p}) with sampler={} seed={}; distinct shapes {}; tv distance vs exact law: {tv_text}",
        args.samples,
        args.sampler.label(),
        args.seed,
        counts.counts().count(),
    );
    Ok(())
}

pub(crate) fn cmd_shape(args: ShapeArgs) -> Result<(), Failure> {
    validate_grid(&args.grid, Some(args.p))?;
    require_format(args.format, &[Format::Json, Format::Csv, Format::Svg], "shape")?;
    if args.samples < 2 {
        return Err(Failure::Usage(
            "need --samples >= 2 so spreads are defined".into(),
        ));
    }
    let (m, n, p) = (args.grid.m, args.grid.n, args.p);

    let exact_sampler = match args.sampler {
        SamplerKind::Exact => Some(ExactSampler::new(&measure_rhs(m, n, p)?)),
        _ => None,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(args.seed, 0));
    let mut stats = ProfileStats::new(m, n, p)?;
    let mut overlays: Vec<Profile> = Vec::new();
    for idx in 0..args.samples {
        let lambda = draw_one(args.sampler, m, n, p, exact_sampler.as_ref(), &mut rng)?;
        let profile = rescale(&lambda, m, n)?;
        if idx < SVG_OVERLAYS {
            overlays.push(profile.clone());
        }
        stats.push(&profile)?;
    }
    let concentration = stats.concentration()?;

    let content = match args.format {
        Format::Json => {
            let rows: Vec<Value> = (0..stats.len())
                .map(|j| {
                    json!({
                        "x": stats.grid_x(j),
                        "mean_height": stats.mean(j),
                        "std_dev": stats.std_dev(j),
                        "n_samples": stats.count(),
                    })
                })
                .collect();
            finish_json(&json!({
                "command": "shape",
                "m": m,
                "n": n,
                "p": p,
                "sampler": args.sampler.label(),
                "seed": args.seed,
                "samples": args.samples,
                "rows": rows,
                "concentration": concentration,
            }))
        }
        Format::Csv => {
            let mut csv = String::from("x,mean_height,std_dev,n_samples\n");
            for j in 0..stats.len() {
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    stats.grid_x(j),
                    stats.mean(j),
                    stats.std_dev(j),
                    stats.count()
                ));
            }
            csv
        }
        Format::Svg => shape_svg(&stats, &overlays, args.seed, args.sampler.label()),
    };
    emit(&args.out, &content)?;

    eprintln!(
        "aggregated {} profiles at (m={m}, n={n}, p={p}) with sampler={} seed={}; concentration {concentration:.5}",
        args.samples,
        args.sampler.label(),
        args.seed,
    );
    Ok(())
}

fn character_rows(rows: &[CharacterRow]) -> Vec<Value> {
    rows.iter()
        .map(|row| {
            json!({
                "cycle_type": partition_value(&row.cycle_type),
                "lhs": ratio_value(&row.lhs),
                "rhs": ratio_value(&row.rhs),
                "match": row.matches(),
            })
        })
        .collect()
}

/// Runs an optional sub-check: out-of-cap sizes degrade to a skip note
/// instead of failing the whole command, because the user's requested scope
/// is (m, n, p) and the auxiliary checks have tighter caps of their own.
fn run_or_skip<T>(
    result: Result<T, Error>,
    render: impl FnOnce(&T) -> Value,
) -> Result<(Option<T>, Value), Failure> {
    match result {
        Ok(report) => {
            let value = render(&report);
            Ok((Some(report), value))
        }
        Err(Error::Resource(msg)) => Ok((None, json!({ "status": "skipped", "reason": msg }))),
        Err(other) => Err(other.into()),
    }
}

pub(crate) fn cmd_character(args: CharacterArgs) -> Result<(), Failure> {
    validate_grid(&args.grid, Some(args.p))?;
    require_format(args.format, &[Format::Json], "character")?;
    let (m, n, p) = (args.grid.m, args.grid.n, args.p);
    if let Some(p_prime) = args.p_prime {
        if p_prime < p || p_prime > m * n {
            return Err(Failure::Usage(format!(
                "need p <= p' <= m*n = {}; got p={p}, p'={p_prime}",
                m * n
            )));
        }
    }

    // The restriction table is the command's core claim, so its caps bound
    // the requested scope and violating them is a resource failure.
    let restriction = verify_restriction(m, n, p)?;
    let mut all_match = restriction.all_match();

    let independence = match args.p_prime {
        Some(p_prime) => {
            let rows = verify_p_independence_all(m, n, p, p_prime)?;
            all_match &= rows.iter().all(CharacterRow::matches);
            json!({
                "status": "ok",
                "p_prime": p_prime,
                "all_match": rows.iter().all(CharacterRow::matches),
                "rows": character_rows(&rows),
            })
        }
        None => json!({ "status": "skipped", "reason": "no --p-prime given" }),
    };

    let (jm, jm_value) = run_or_skip(verify_jm_partial_trace(m, n, p), |report| {
        json!({
            "status": "ok",
            "scalar": ratio_value(&report.scalar),
            "side_dimension": report.side_dimension,
            "ok": report.ok,
        })
    })?;
    if let Some(report) = &jm {
        all_match &= report.ok;
    }

    let (pairs, pairs_value) = run_or_skip(verify_pair_conjugation(m, n, p), |report| {
        json!({
            "status": "ok",
            "all_match": report.all_match(),
            "rows": report
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "first": partition_value(&row.first),
                        "second": partition_value(&row.second),
                        "lhs": ratio_value(&row.lhs),
                        "rhs": ratio_value(&row.rhs),
                        "match": row.matches(),
                    })
                })
                .collect::<Vec<_>>(),
        })
    })?;
    if let Some(report) = &pairs {
        all_match &= report.all_match();
    }

    let report = json!({
        "command": "character",
        "m": m,
        "n": n,
        "p": p,
        "p_prime": args.p_prime,
        "restriction": {
            "all_match": restriction.all_match(),
            "rows": character_rows(&restriction.rows),
        },
        "p_independence": independence,
        "jm_partial_trace": jm_value,
        "pair_conjugation": pairs_value,
        "all_match": all_match,
    });
    emit(&args.out, &finish_json(&report))?;

    if all_match {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!(
            "character identities failed at (m={m}, n={n}, p={p})"
        )))
    }
}

fn parse_shape(text: &str) -> Result<Partition, Failure> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Partition::empty());
    }
    let parts: Vec<usize> = trimmed
        .split(',')
        .map(|piece| {
            piece
                .trim()
                .parse::<usize>()
                .map_err(|_| Failure::Usage(format!("shape part {piece:?} is not an integer")))
        })
        .collect::<Result<_, _>>()?;
    Partition::new(parts).map_err(|err| Failure::Usage(err.to_string()))
}

pub(crate) fn cmd_bijection(args: BijectionArgs) -> Result<(), Failure> {
    validate_grid(&args.grid, args.p)?;
    require_format(args.format, &[Format::Json], "bijection")?;
    let (m, n) = (args.grid.m, args.grid.n);
    let rect = Rectangle::new(m, n)?;

    let shapes: Vec<Partition> = match (&args.shape, args.p) {
        (Some(text), maybe_p) => {
            let shape = parse_shape(text)?;
            if let Some(p) = maybe_p {
                if shape.size() != p {
                    return Err(Failure::Usage(format!(
                        "--shape has {} boxes but --p is {p}",
                        shape.size()
                    )));
                }
            }
            if !shape.fits_in(rect) {
                return Err(Failure::Usage(format!(
                    "shape {shape} does not fit in a {m}x{n} rectangle"
                )));
            }
            vec![shape]
        }
        (None, Some(p)) => enumerate(rect, p)?,
        (None, None) => {
            let mut all = Vec::new();
            for p in 0..=rect.area() {
                all.extend(enumerate(rect, p)?);
            }
            all
        }
    };

    let total: BigUint = shapes.iter().map(|nu| gl_dim(nu, m)).sum();
    if total > BigUint::from(BIJECTION_TABLEAU_CAP) {
        return Err(Failure::Resource(format!(
            "bijection scope has {total} tableaux, above the cap of {BIJECTION_TABLEAU_CAP}; \
             narrow it with --shape or --p"
        )));
    }

    let mut pairs = Vec::new();
    let mut shape_rows = Vec::new();
    let mut round_trip = true;
    let mut count_preserved = true;
    for nu in &shapes {
        let bar = complement(nu, rect)?;
        let originals = enumerate_ssyt(nu, m);
        let partners = enumerate_ssyt(&bar, m);
        count_preserved &= originals.len() == partners.len();
        shape_rows.push(json!({
            "shape": partition_value(nu),
            "complement": partition_value(&bar),
            "tableau_count": originals.len(),
            "complement_tableau_count": partners.len(),
        }));
        for tableau in &originals {
            let image = complement_ssyt(tableau, rect)?;
            round_trip &= complement_ssyt(&image, rect)?.eq(tableau) && image.shape() == &bar;
            pairs.push(json!({
                "input_shape": partition_value(tableau.shape()),
                "input": serde_json::to_value(tableau).expect("tableaux serialize as row arrays"),
                "output_shape": partition_value(image.shape()),
                "output": serde_json::to_value(&image).expect("tableaux serialize as row arrays"),
            }));
        }
    }

    let ok = round_trip && count_preserved;
    let report = json!({
        "command": "bijection",
        "rows": m,
        "cols": n,
        "p": args.p,
        "shape": args.shape,
        "shapes": shape_rows,
        "pair_count": pairs.len(),
        "pairs": pairs,
        "round_trip": round_trip,
        "count_preserved": count_preserved,
    });
    emit(&args.out, &finish_json(&report))?;

    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!(
            "bijection failed in the {m}x{n} rectangle: round_trip={round_trip}, count_preserved={count_preserved}"
        )))
    }
}
