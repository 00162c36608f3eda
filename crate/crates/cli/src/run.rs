//! Command implementations.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use cohprobe::discord::{discord_max_locus, ising_thermal_discord, LocusGrid};
use cohprobe::ed::{nearest_neighbour_correlators, Boundary, ChainModel, ChainSpec, EigenSystem};
use cohprobe::kitaev::{self, KitaevPoint};
use cohprobe::scan::{
    crossover_locus, fit_crossover, sweep, CrossoverFit, LocusSweep, ModelFamily, SweepSpec, DEFAULT_DIFF_STEP,
};
use cohprobe::tfim::{self, Convention};
use cohprobe::xx::{self, XxPoint, YyTreatment};
use cohprobe::QuadratureSpec;
use rayon::prelude::*;

use crate::cli::{
    BoundaryArg, Command, Common, DiffArgs, DiscordArgs, Figure, FiguresArgs, Format, LocusArgs, Model, ModelArgs,
    OracleArgs, PointArgs, Range, ScanArgs, State, XxYy,
};
use crate::error::{CliError, Result};
use crate::output::{emit, render, Cell, Metadata, Table};

pub const SCAN_COLUMNS: &[&str] = &["param", "coherence", "chi", "error"];
pub const POINT_COLUMNS: &[&str] = &["param", "coherence", "chi"];
pub const LOCUS_COLUMNS: &[&str] = &["kbt", "lambda_m", "chi_max", "tie"];
pub const DISCORD_COLUMNS: &[&str] = &["kbt", "lambda", "discord"];
pub const DISCORD_MAX_COLUMNS: &[&str] = &["kbt", "lambda_max", "discord_max", "tie", "out_of_range"];
pub const ORACLE_COLUMNS: &[&str] = &["observable", "ed", "formula", "difference", "flagged"];
pub const FIG1_COLUMNS: &[&str] = &["lambda", "C_symbroken", "C_thermalground", "chi_thermalground"];
pub const FIG2_COLUMNS: &[&str] = &["lambda", "C_xx", "chi_xx"];
pub const FIG3_COLUMNS: &[&str] = &["jx", "g_xx", "C", "chi", "gap"];
pub const FIG4_COLUMNS: &[&str] = &["kbt", "lambda", "C", "chi"];

pub fn run(command: Command) -> Result<()> {
    let name = command.name();
    match command {
        Command::Scan(a) => scan(name, &a),
        Command::Point(a) => point(name, &a),
        Command::Locus(a) => locus(name, &a),
        Command::Discord(a) => discord(name, &a),
        Command::Oracle(a) => oracle(name, &a),
        Command::Figures(a) => figures(name, &a),
    }
}

fn enum_name<E: ValueEnum>(v: &E) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn quadrature(c: &Common, meta: &mut Metadata) -> Result<QuadratureSpec> {
    let q = QuadratureSpec::new(c.abs_tol, c.rel_tol, c.max_subdivisions)?;
    meta.flag("abs-tol", format!("{:?}", q.abs_tol))
        .flag("rel-tol", format!("{:?}", q.rel_tol))
        .flag("max-subdivisions", q.max_subdivisions);
    Ok(q)
}

fn write(table: &Table, meta: &Metadata, format: Format, path: Option<&Path>) -> Result<()> {
    emit(&render(table, meta, format)?, path)
}

/// Maps the model flags onto a swept family, rejecting inconsistent combinations.
fn resolve_model(m: &ModelArgs, meta: &mut Metadata) -> Result<ModelFamily> {
    let usage = |s: &str| Err(CliError::Usage(s.into()));
    if m.model != Model::Xx && m.xx_yy.is_some() {
        return usage("--xx-yy applies to --model xx only");
    }
    meta.flag("model", enum_name(&m.model));
    let family = match m.model {
        Model::Tfim => {
            let state = m.state.unwrap_or(if m.kbt.is_some() {
                State::Gibbs
            } else {
                State::Symbroken
            });
            meta.flag("state", enum_name(&state));
            match (state, m.kbt) {
                (State::Gibbs, Some(kbt)) if kbt > 0.0 && kbt.is_finite() => {
                    meta.flag("kbt", format!("{kbt:?}"));
                    meta.info("convention", "field_over_coupling");
                    ModelFamily::TfimGibbs { kbt }
                }
                (State::Gibbs, _) => return usage("--state gibbs needs --kbt > 0"),
                (_, Some(_)) => return usage("--kbt applies to --state gibbs only"),
                (State::Symbroken, None) => ModelFamily::TfimSymmetryBroken,
                (State::Thermalground, None) => ModelFamily::TfimThermalGround,
            }
        }
        Model::Xx | Model::Kitaev if m.state.is_some() => return usage("--state applies to --model tfim only"),
        Model::Xx | Model::Kitaev if m.kbt.is_some() => {
            return usage("--kbt applies to --model tfim only (these are ground states)")
        }
        Model::Xx => {
            let yy = m.xx_yy.unwrap_or(XxYy::Symmetric);
            meta.flag("xx-yy", enum_name(&yy));
            ModelFamily::Xx {
                yy: match yy {
                    XxYy::Symmetric => YyTreatment::Symmetric,
                    XxYy::Omitted => YyTreatment::Omitted,
                },
            }
        }
        Model::Kitaev => ModelFamily::KitaevPath,
    };
    if matches!(family, ModelFamily::TfimSymmetryBroken | ModelFamily::TfimThermalGround) {
        meta.info("convention", "coupling_over_field");
    }
    meta.info("family", family.name());
    Ok(family)
}

fn check_domain(family: &ModelFamily, lo: f64, hi: f64) -> Result<()> {
    let (dlo, dhi) = family.domain();
    if lo < dlo || hi > dhi {
        return Err(CliError::Usage(format!(
            "parameter range [{lo}, {hi}] leaves the {} domain [{dlo}, {dhi}]",
            family.name()
        )));
    }
    Ok(())
}

fn diff_step(d: &DiffArgs, grid_step: f64) -> f64 {
    d.diff_step.unwrap_or(DEFAULT_DIFF_STEP.min(grid_step))
}

fn scan(name: &str, a: &ScanArgs) -> Result<()> {
    let mut meta = Metadata::new(name);
    let family = resolve_model(&a.model, &mut meta)?;
    check_domain(&family, a.lambda.min, a.lambda.max)?;
    let spec = SweepSpec::new(a.lambda.min, a.lambda.max, a.lambda.step)?
        .with_diff_step(diff_step(&a.diff, a.lambda.step))?
        .refined(a.diff.refine);
    meta.flag("lambda", a.lambda)
        .flag("diff-step", format!("{:?}", spec.diff_step))
        .flag("refine", spec.refine);
    let quad = quadrature(&a.common, &mut meta)?;
    let curve = sweep(family, &spec, &quad)?;
    let rows = curve
        .samples
        .iter()
        .map(|s| {
            vec![
                Cell::Num(s.param),
                Cell::Maybe(s.coherence),
                Cell::Maybe(s.chi),
                Cell::Text(s.error.clone().unwrap_or_default()),
            ]
        })
        .collect();
    let table = Table {
        schema: "scan/v1",
        columns: SCAN_COLUMNS,
        rows,
    };
    write(&table, &meta, a.common.format, a.common.output.as_deref())?;
    let first_failure = curve.failures().next().map(|bad| CliError::AtPoint {
        param: bad.param,
        message: bad.error.clone().unwrap_or_default(),
    });
    first_failure.map_or(Ok(()), Err)
}

fn point(name: &str, a: &PointArgs) -> Result<()> {
    let mut meta = Metadata::new(name);
    let family = resolve_model(&a.model, &mut meta)?;
    check_domain(&family, a.lambda, a.lambda)?;
    let h = diff_step(&a.diff, DEFAULT_DIFF_STEP);
    if !(h > 0.0 && h.is_finite()) {
        return Err(CliError::Usage(format!("--diff-step must be positive, got {h}")));
    }
    meta.flag("lambda", format!("{:?}", a.lambda))
        .flag("diff-step", format!("{h:?}"))
        .flag("refine", a.diff.refine);
    let quad = quadrature(&a.common, &mut meta)?;
    let c = family
        .coherence(a.lambda, &quad)
        .map_err(|e| CliError::at(a.lambda, e))?;
    let chi = family
        .susceptibility(a.lambda, h, a.diff.refine, &quad)
        .map_err(|e| CliError::at(a.lambda, e))?;
    let table = Table {
        schema: "point/v1",
        columns: POINT_COLUMNS,
        rows: vec![vec![Cell::Num(a.lambda), Cell::Num(c), Cell::Num(chi)]],
    };
    write(&table, &meta, a.common.format, a.common.output.as_deref())
}

fn fit_json(fit: &CrossoverFit) -> Result<Vec<u8>> {
    let doc = serde_json::json!({
        "cohprobe": cohprobe::VERSION,
        "schema": "locus-fit/v1",
        "slope": fit.slope,
        "intercept": fit.intercept,
        "knee_kbt": fit.knee_kbt,
        "upper_slope": fit.upper_slope,
        "fit_residual": fit.fit_residual,
        "locus": fit.locus,
    });
    let mut buf = serde_json::to_vec_pretty(&doc)?;
    buf.push(b'\n');
    Ok(buf)
}

/// λ_M(T) rows and the hinge fit; the fit error is returned separately so the
/// locus itself is still written.
fn locus_table(kbts: &[f64], window: &LocusSweep, quad: &QuadratureSpec) -> Result<(Table, Result<CrossoverFit>)> {
    if let Some(bad) = kbts.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        return Err(CliError::Usage(format!(
            "locus temperatures must be positive, got {bad}"
        )));
    }
    let locus = crossover_locus(kbts, window, quad)?;
    let rows = locus
        .iter()
        .map(|(t, m)| vec![Cell::Num(*t), Cell::Num(m.lambda), Cell::Num(m.chi), Cell::Bool(m.tie)])
        .collect();
    let pairs: Vec<(f64, f64)> = locus.iter().map(|(t, m)| (*t, m.lambda)).collect();
    let fit = fit_crossover(&pairs).map_err(|e| CliError::Numerical(format!("locus fit: {e}")));
    Ok((
        Table {
            schema: "locus/v1",
            columns: LOCUS_COLUMNS,
            rows,
        },
        fit,
    ))
}

fn add_fit_info(meta: &mut Metadata, fit: &CrossoverFit) {
    meta.info("fit.slope", format!("{:?}", fit.slope))
        .info("fit.intercept", format!("{:?}", fit.intercept))
        .info("fit.knee_kbt", format!("{:?}", fit.knee_kbt))
        .info("fit.upper_slope", format!("{:?}", fit.upper_slope));
}

fn locus(name: &str, a: &LocusArgs) -> Result<()> {
    if a.model != Model::Tfim {
        return Err(CliError::Usage(
            "the thermal locus is defined for --model tfim only".into(),
        ));
    }
    let mut meta = Metadata::new(name);
    meta.flag("model", "tfim")
        .flag("kbt", &a.kbt)
        .flag("lambda", a.lambda)
        .flag("diff-step", format!("{:?}", a.diff_step));
    meta.info("family", "tfim-gibbs")
        .info("convention", "field_over_coupling");
    let quad = quadrature(&a.common, &mut meta)?;
    let window = LocusSweep {
        lambda_min: a.lambda.min,
        lambda_max: a.lambda.max,
        step: a.lambda.step,
        diff_step: a.diff_step,
    };
    let (table, fit) = locus_table(&a.kbt.values(), &window, &quad)?;
    if let Ok(f) = &fit {
        add_fit_info(&mut meta, f);
    }
    write(&table, &meta, a.common.format, a.common.output.as_deref())?;
    let fit = fit?;
    let sidecar = a
        .fit
        .clone()
        .or_else(|| a.common.output.as_ref().map(|o| o.with_extension("fit.json")));
    if let Some(p) = sidecar {
        emit(&fit_json(&fit)?, Some(&p))?;
    }
    Ok(())
}

fn discord_curves(kbts: &[f64], lambdas: &[f64], quad: &QuadratureSpec) -> Result<Vec<Vec<Cell>>> {
    let points: Vec<(f64, f64)> = kbts
        .iter()
        .flat_map(|&t| lambdas.iter().map(move |&l| (t, l)))
        .collect();
    points
        .par_iter()
        .map(|&(t, l)| {
            let d = ising_thermal_discord(l, t, quad).map_err(|e| CliError::AtPoint {
                param: l,
                message: format!("kBT {t}: {e}"),
            })?;
            Ok(vec![Cell::Num(t), Cell::Num(l), Cell::Num(d)])
        })
        .collect()
}

fn discord_maxima(kbts: &[f64], grid: &LocusGrid, quad: &QuadratureSpec) -> Result<Vec<Vec<Cell>>> {
    Ok(discord_max_locus(kbts, grid, quad)?
        .into_iter()
        .map(|p| {
            vec![
                Cell::Num(p.kbt),
                Cell::Num(p.lambda),
                Cell::Num(p.discord),
                Cell::Bool(p.tie),
                Cell::Bool(p.out_of_range),
            ]
        })
        .collect())
}

fn discord(name: &str, a: &DiscordArgs) -> Result<()> {
    let kbts = a.kbt.values();
    if let Some(bad) = kbts.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        return Err(CliError::Usage(format!(
            "discord temperatures must be positive, got {bad}"
        )));
    }
    if a.lambda.min < 0.0 {
        return Err(CliError::Usage(format!("λ must be >= 0, got {}", a.lambda.min)));
    }
    let mut meta = Metadata::new(name);
    meta.flag("kbt", &a.kbt)
        .flag("lambda", a.lambda)
        .flag("maximum", a.maximum);
    meta.info("family", "tfim-gibbs-pair").info("measured", "B");
    let table = if a.maximum {
        meta.flag("refine-tol", format!("{:?}", a.refine_tol));
        let quad = quadrature(&a.common, &mut meta)?;
        let grid = LocusGrid {
            lambda_min: a.lambda.min,
            lambda_max: a.lambda.max,
            step: a.lambda.step,
            refine_tol: a.refine_tol,
        };
        Table {
            schema: "discord-max/v1",
            columns: DISCORD_MAX_COLUMNS,
            rows: discord_maxima(&kbts, &grid, &quad)?,
        }
    } else {
        let quad = quadrature(&a.common, &mut meta)?;
        Table {
            schema: "discord/v1",
            columns: DISCORD_COLUMNS,
            rows: discord_curves(&kbts, &a.lambda.nodes(), &quad)?,
        }
    };
    write(&table, &meta, a.common.format, a.common.output.as_deref())
}

fn oracle(name: &str, a: &OracleArgs) -> Result<()> {
    let mut meta = Metadata::new(name);
    meta.flag("model", enum_name(&a.model))
        .flag("n", a.n)
        .flag("lambda", format!("{:?}", a.lambda))
        .flag("threshold", format!("{:?}", a.threshold));
    let quad = quadrature(&a.common, &mut meta)?;
    let (chain_model, kbt) = match (a.model, a.kbt) {
        (Model::Tfim, Some(t)) if t > 0.0 && t.is_finite() => (ChainModel::Tfim(Convention::FieldOverCoupling), t),
        (Model::Tfim, _) => return Err(CliError::Usage("tfim oracle needs --kbt > 0".into())),
        (Model::Xx, None) => (ChainModel::Xx, 0.0),
        (Model::Xx, Some(_)) => return Err(CliError::Usage("xx oracle compares ground states; drop --kbt".into())),
        (Model::Kitaev, _) => return Err(CliError::Usage("no finite-lattice oracle for kitaev".into())),
    };
    if kbt > 0.0 {
        meta.flag("kbt", format!("{kbt:?}"));
    }
    let spec = match a.boundary {
        Some(b) => {
            meta.flag("boundary", enum_name(&b));
            let b = match b {
                BoundaryArg::Open => Boundary::Open,
                BoundaryArg::Periodic => Boundary::Periodic,
            };
            ChainSpec::with_boundary(chain_model, a.n, a.lambda, kbt, b)?
        }
        None => ChainSpec::new(chain_model, a.n, a.lambda, kbt)?,
    };
    let sys = EigenSystem::new(&spec).map_err(|e| CliError::at(a.lambda, e))?;
    let ed = nearest_neighbour_correlators(&sys.thermal(kbt).map_err(|e| CliError::at(a.lambda, e))?)
        .map_err(|e| CliError::at(a.lambda, e))?;
    let pairs: Vec<(&str, f64, f64)> = match a.model {
        Model::Tfim => {
            let f = tfim::thermal_correlators(a.lambda, kbt, &quad).map_err(|e| CliError::at(a.lambda, e))?;
            vec![
                ("sx", ed.sx, f.sx),
                ("sz", ed.sz, f.sz),
                ("gxx", ed.gxx, f.gxx),
                ("gyy", ed.gyy, f.gyy),
                ("gzz", ed.gzz, f.gzz),
            ]
        }
        _ => {
            let f = xx::correlators(&XxPoint::new(a.lambda)?);
            // the transverse sign depends on the hopping convention
            vec![
                ("sz", ed.sz, f.sz),
                ("gzz", ed.gzz, f.gzz),
                ("abs_gxx", ed.gxx.abs(), f.gxx.abs()),
                ("abs_gyy", ed.gyy.abs(), f.gxx.abs()),
            ]
        }
    };
    meta.info("boundary", format!("{:?}", spec.boundary).to_lowercase());
    let rows = pairs
        .into_iter()
        .map(|(obs, e, f)| {
            let d = e - f;
            vec![
                Cell::Text(obs.into()),
                Cell::Num(e),
                Cell::Num(f),
                Cell::Num(d),
                Cell::Bool(d.abs() > a.threshold),
            ]
        })
        .collect();
    let table = Table {
        schema: "oracle/v1",
        columns: ORACLE_COLUMNS,
        rows,
    };
    write(&table, &meta, a.common.format, a.common.output.as_deref())
}

fn range(min: f64, max: f64, step: f64) -> Range {
    Range { min, max, step }
}

fn sweep_rows(family: ModelFamily, r: Range, quad: &QuadratureSpec) -> Result<Vec<(f64, f64, f64)>> {
    let curve = sweep(family, &SweepSpec::new(r.min, r.max, r.step)?, quad)?;
    curve
        .samples
        .iter()
        .map(|s| match (s.coherence, s.chi) {
            (Some(c), Some(x)) => Ok((s.param, c, x)),
            _ => Err(CliError::AtPoint {
                param: s.param,
                message: s.error.clone().unwrap_or_default(),
            }),
        })
        .collect()
}

fn figure(fig: Figure, quad: &QuadratureSpec, meta: &mut Metadata) -> Result<Vec<(&'static str, Table)>> {
    Ok(match fig {
        Figure::Fig1 => {
            let r = range(0.0, 2.0, 0.01);
            meta.info("lambda", r).info("convention", "coupling_over_field");
            let tg = sweep_rows(ModelFamily::TfimThermalGround, r, quad)?;
            let rows = tg
                .into_iter()
                .map(|(l, c, chi)| {
                    let sb = ModelFamily::TfimSymmetryBroken
                        .coherence(l, quad)
                        .map_err(|e| CliError::at(l, e))?;
                    Ok(vec![Cell::Num(l), Cell::Num(sb), Cell::Num(c), Cell::Num(chi)])
                })
                .collect::<Result<_>>()?;
            vec![(
                "fig1",
                Table {
                    schema: "fig1/v1",
                    columns: FIG1_COLUMNS,
                    rows,
                },
            )]
        }
        Figure::Fig2 => {
            let r = range(0.0, 2.0, 0.01);
            meta.info("lambda", r).info("xx-yy", "symmetric");
            let rows = sweep_rows(
                ModelFamily::Xx {
                    yy: YyTreatment::Symmetric,
                },
                r,
                quad,
            )?
            .into_iter()
            .map(|(l, c, chi)| vec![Cell::Num(l), Cell::Num(c), Cell::Num(chi)])
            .collect();
            vec![(
                "fig2",
                Table {
                    schema: "fig2/v1",
                    columns: FIG2_COLUMNS,
                    rows,
                },
            )]
        }
        Figure::Fig3 => {
            let r = range(0.0, 1.0, 0.005);
            meta.info("jx", r).info("gap-grid", 256);
            let rows = sweep_rows(ModelFamily::KitaevPath, r, quad)?
                .into_par_iter()
                .map(|(jx, c, chi)| {
                    let p = KitaevPoint::on_path(jx).map_err(|e| CliError::at(jx, e))?;
                    let g = kitaev::xx_link_correlator(&p, quad).map_err(|e| CliError::at(jx, e))?;
                    let gap = kitaev::gap(&p, 256).map_err(|e| CliError::at(jx, e))?;
                    Ok(vec![
                        Cell::Num(jx),
                        Cell::Num(g),
                        Cell::Num(c),
                        Cell::Num(chi),
                        Cell::Num(gap),
                    ])
                })
                .collect::<Result<_>>()?;
            vec![(
                "fig3",
                Table {
                    schema: "fig3/v1",
                    columns: FIG3_COLUMNS,
                    rows,
                },
            )]
        }
        Figure::Fig4 => {
            let r = range(0.5, 2.0, 0.01);
            let kbts = [0.05, 0.1, 0.2, 0.3, 0.4, 0.5];
            let locus_kbts: Vec<f64> = (1..=12).map(|i| i as f64 / 20.0).collect();
            meta.info("lambda", r)
                .info("kbt", "0.05,0.1,0.2,0.3,0.4,0.5")
                .info("locus-kbt", "0.05:0.6:0.05")
                .info("convention", "field_over_coupling");
            let mut rows = Vec::new();
            for kbt in kbts {
                for (l, c, chi) in sweep_rows(ModelFamily::TfimGibbs { kbt }, r, quad)? {
                    rows.push(vec![Cell::Num(kbt), Cell::Num(l), Cell::Num(c), Cell::Num(chi)]);
                }
            }
            let (locus, fit) = locus_table(&locus_kbts, &LocusSweep::default(), quad)?;
            add_fit_info(meta, &fit?);
            vec![
                (
                    "fig4",
                    Table {
                        schema: "fig4/v1",
                        columns: FIG4_COLUMNS,
                        rows,
                    },
                ),
                ("fig4_locus", locus),
            ]
        }
        Figure::Fig5 => {
            let r = range(0.0, 2.0, 0.01);
            let kbts: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
            meta.info("lambda", r).info("kbt", "0.1:1:0.1").info("measured", "B");
            let rows = discord_curves(&kbts, &r.nodes(), quad)?;
            vec![(
                "fig5",
                Table {
                    schema: "discord/v1",
                    columns: DISCORD_COLUMNS,
                    rows,
                },
            )]
        }
        Figure::Fig6 => {
            let kbts: Vec<f64> = (1..=14).map(|i| i as f64 / 20.0).collect();
            let grid = LocusGrid::default();
            meta.info("lambda", range(grid.lambda_min, grid.lambda_max, grid.step))
                .info("kbt", "0.05:0.7:0.05")
                .info("refine-tol", format!("{:?}", grid.refine_tol));
            let rows = discord_maxima(&kbts, &grid, quad)?;
            vec![(
                "fig6",
                Table {
                    schema: "discord-max/v1",
                    columns: DISCORD_MAX_COLUMNS,
                    rows,
                },
            )]
        }
        Figure::All => unreachable!("expanded by the caller"),
    })
}

fn figures(name: &str, a: &FiguresArgs) -> Result<()> {
    let which: Vec<Figure> = match a.which {
        Figure::All => vec![
            Figure::Fig1,
            Figure::Fig2,
            Figure::Fig3,
            Figure::Fig4,
            Figure::Fig5,
            Figure::Fig6,
        ],
        one => vec![one],
    };
    if a.common.output.is_some() && which.len() > 1 {
        return Err(CliError::Usage(
            "--output needs a single --which figure; use --outdir".into(),
        ));
    }
    let ext = match a.common.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    if a.common.output.is_none() {
        std::fs::create_dir_all(&a.outdir).map_err(|source| CliError::Io {
            path: a.outdir.clone(),
            source,
        })?;
    }
    for fig in which {
        let mut meta = Metadata::new(name);
        meta.flag("which", enum_name(&fig));
        let quad = quadrature(&a.common, &mut meta)?;
        let tables = figure(fig, &quad, &mut meta)?;
        let single = tables.len() == 1;
        for (stem, table) in tables {
            let path: PathBuf = match &a.common.output {
                Some(p) if single => p.clone(),
                Some(p) => p.with_file_name(format!("{stem}.{ext}")),
                None => a.outdir.join(format!("{stem}.{ext}")),
            };
            write(&table, &meta, a.common.format, Some(&path))?;
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}
