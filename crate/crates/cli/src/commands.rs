//! The pipeline commands. Each returns the JSON records the binary prints,
//! one per line, after echoing the resolved config.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use simplex_embed_core::pooling::PoolingMode;
use simplex_embed_core::DenseMatrix;

use crate::artifacts::{
    embedding_path, expect_config, log_path, log_lines, model_path, ModelFile, COMPLEX_EMBEDDINGS, POOL_LOG,
    POOL_WEIGHTS,
};
use crate::complex_file::parse_complex_file;
use crate::config::RunConfig;
use crate::dataset::{write_dataset, Dataset};
use crate::error::{write_string, CliError, Result};
use crate::generate::{generate_synthetic_dataset, GeneratorConfig};
use crate::matrix_file::{read_matrix_kind, write_matrix_file, MatrixFile};
use crate::pipeline::{compute_distances, evaluate, train_embeddings, train_pool};

pub const EMBEDDING: &str = "embedding";
pub const DISTANCE: &str = "distance";
pub const POOL_W_KIND: &str = "pool_weights";
pub const COMPLEX_EMBEDDING_KIND: &str = "complex_embeddings";

/// The config echo every command starts with.
pub fn config_record(cfg: &RunConfig) -> Value {
    json!({"config": cfg, "config_hash": cfg.hash(), "seed": cfg.seed})
}

/// `build`: simplex counts, `N̂`, and optionally the neighborhood matrices.
pub fn build(complex: &Path, out: Option<&Path>, cfg: &RunConfig) -> Result<Vec<Value>> {
    let (file, x) = parse_complex_file(complex)?;
    let name = &file.name;
    let mut written = Vec::new();
    if let Some(dir) = out {
        let hash = cfg.hash();
        let mut save = |kind: &str, file_name: String, m: &simplex_embed_core::SparseMatrix| -> Result<()> {
            let path = dir.join(file_name);
            write_matrix_file(&MatrixFile::from_sparse(kind, m).with("complex", name).with("config", &hash), &path)?;
            written.push(path.display().to_string());
            Ok(())
        };
        save("adjacency", format!("{name}.adjacency.txt"), &x.adjacency_matrix())?;
        save("coadjacency", format!("{name}.coadjacency.txt"), &x.coadjacency_matrix())?;
        for k in 0..x.dim() {
            save("adjacency", format!("{name}.adjacency_{k}.txt"), &x.per_dim_adjacency(k)?)?;
            save("incidence", format!("{name}.incidence_{k}.txt"), &x.coboundary_incidence(k)?)?;
        }
        for k in 1..=x.dim() {
            save("coadjacency", format!("{name}.coadjacency_{k}.txt"), &x.per_dim_coadjacency(k)?)?;
        }
    }
    Ok(vec![json!({
        "complex": name,
        "dim": x.dim(),
        "counts": x.counts(),
        "n_hat": x.n_hat(),
        "written": written,
    })])
}

/// `train-ae`: one embedding table, model and log per complex.
pub fn train_ae(dataset: &Dataset, out: &Path, cfg: &RunConfig) -> Result<Vec<Value>> {
    let hash = cfg.hash();
    let trained = train_embeddings(dataset, cfg)?;
    let mut records = Vec::with_capacity(dataset.len());
    for (entry, t) in dataset.entries.iter().zip(&trained) {
        let name = entry.name();
        let table = MatrixFile::new(EMBEDDING, t.embeddings.clone())
            .with("complex", name)
            .with("config", &hash)
            .with("dims", format!("{}..{}", t.embedded_dims.start, t.embedded_dims.end));
        write_matrix_file(&table, &embedding_path(out, name))?;
        ModelFile::from_trained(&hash, name, t).save(&model_path(out, name))?;
        write_string(&log_path(out, name), &log_lines(&t.log))?;
        records.push(json!({
            "complex": name,
            "rows": t.embeddings.nrows(),
            "initial_loss": t.log.first().map(|r| r.total),
            "final_loss": t.log.last().map(|r| r.total),
        }));
    }
    Ok(records)
}

/// `embed`: applies a stored model to a complex.
pub fn embed(model: &Path, complex: &Path, out: &Path, cfg: &RunConfig) -> Result<Vec<Value>> {
    let hash = cfg.hash();
    let m = ModelFile::load(model)?;
    expect_config(model, Some(&m.config), &hash)?;
    let (file, x) = parse_complex_file(complex)?;
    let u = m.embed(&x, model)?;
    let rows = u.nrows();
    write_matrix_file(&MatrixFile::new(EMBEDDING, u).with("complex", &file.name).with("config", &hash), out)?;
    Ok(vec![json!({"complex": file.name, "rows": rows, "n_hat": x.n_hat(), "written": out.display().to_string()})])
}

/// `distmat`: the Hausdorff distance matrix of a dataset.
pub fn distmat(dataset: &Dataset, out: &Path, cfg: &RunConfig) -> Result<Vec<Value>> {
    let d = compute_distances(dataset, cfg)?;
    let size = d.size();
    let file = MatrixFile::new(DISTANCE, d.into_matrix()).with("config", cfg.hash()).with("complexes", names(dataset));
    write_matrix_file(&file, out)?;
    Ok(vec![json!({"complexes": size, "written": out.display().to_string()})])
}

fn names(dataset: &Dataset) -> String {
    dataset.entries.iter().map(|e| e.name()).collect::<Vec<_>>().join(",")
}

/// Reads every complex's embedding table from `dir`, checking its provenance.
pub fn load_embeddings(dataset: &Dataset, dir: &Path, cfg: &RunConfig) -> Result<Vec<DenseMatrix>> {
    let hash = cfg.hash();
    dataset
        .entries
        .iter()
        .map(|e| {
            let path = embedding_path(dir, e.name());
            let file = read_matrix_kind(&path, EMBEDDING)?;
            expect_config(&path, file.config_hash(), &hash)?;
            Ok(file.matrix)
        })
        .collect()
}

/// Reads `D`, checking provenance and that it matches the dataset.
pub fn load_distances(path: &Path, dataset: &Dataset, cfg: &RunConfig) -> Result<DenseMatrix> {
    let file = read_matrix_kind(path, DISTANCE)?;
    expect_config(path, file.config_hash(), &cfg.hash())?;
    if file.meta.get("complexes").map(String::as_str) != Some(names(dataset).as_str()) {
        return Err(CliError::parse(path, "distance matrix was computed for a different list of complexes"));
    }
    Ok(file.matrix)
}

/// `train-pool`: learns `W` and writes every `h_X`.
pub fn train_pool_cmd(
    dataset: &Dataset,
    embeddings: &Path,
    distances: Option<&Path>,
    out: &Path,
    cfg: &RunConfig,
) -> Result<Vec<Value>> {
    let hash = cfg.hash();
    let tables = load_embeddings(dataset, embeddings, cfg)?;
    let d = match (cfg.pooling()?.mode, distances) {
        (PoolingMode::Stress, None) => {
            return Err(CliError::Config("stress pooling needs `--distances`".into()));
        }
        (_, Some(p)) => Some(load_distances(p, dataset, cfg)?),
        (_, None) => None,
    };
    let trained = train_pool(&tables, dataset, d.as_ref(), cfg)?;
    let mode = match trained.model.mode {
        PoolingMode::Stress => "stress",
        PoolingMode::Triplet { .. } => "triplet",
    };
    let w = MatrixFile::new(POOL_W_KIND, trained.model.w.clone()).with("config", &hash).with("mode", mode);
    write_matrix_file(&w, &out.join(POOL_WEIGHTS))?;
    let rows: Vec<&[f64]> = trained.embeddings.iter().map(|e| e.h.as_slice()).collect();
    let h = DenseMatrix::from_rows(&rows)?;
    let h_file = MatrixFile::new(COMPLEX_EMBEDDING_KIND, h).with("config", &hash).with("complexes", names(dataset));
    write_matrix_file(&h_file, &out.join(COMPLEX_EMBEDDINGS))?;
    let log: String = trained
        .log
        .iter()
        .enumerate()
        .map(|(epoch, loss)| format!("{}\n", json!({"epoch": epoch, "loss": loss})))
        .collect();
    write_string(&out.join(POOL_LOG), &log)?;
    Ok(vec![json!({
        "mode": mode,
        "initial_loss": trained.initial_loss(),
        "final_loss": trained.final_loss(),
        "written": [out.join(POOL_WEIGHTS), out.join(COMPLEX_EMBEDDINGS), out.join(POOL_LOG)],
    })])
}

/// `eval`: reconstruction AUC, stress, 1-NN accuracy and triplet satisfaction.
pub fn eval(
    dataset: &Dataset,
    embeddings: &Path,
    pool: &Path,
    distances: Option<&Path>,
    cfg: &RunConfig,
) -> Result<Vec<Value>> {
    let tables = load_embeddings(dataset, embeddings, cfg)?;
    let h_path = pool.join(COMPLEX_EMBEDDINGS);
    let h_file = read_matrix_kind(&h_path, COMPLEX_EMBEDDING_KIND)?;
    expect_config(&h_path, h_file.config_hash(), &cfg.hash())?;
    if h_file.matrix.nrows() != dataset.len() {
        return Err(CliError::parse(
            &h_path,
            format!("{} complex embeddings for a dataset of {}", h_file.matrix.nrows(), dataset.len()),
        ));
    }
    let pooled: Vec<Vec<f64>> = h_file.matrix.rows().map(<[f64]>::to_vec).collect();
    let d = distances.map(|p| load_distances(p, dataset, cfg)).transpose()?;
    let report = evaluate(dataset, &tables, &pooled, d.as_ref(), cfg)?;
    Ok(vec![serde_json::to_value(report).expect("reports always serialize")])
}

/// `gen`: writes a synthetic dataset and its manifest.
pub fn gen(generator: &GeneratorConfig, out: &Path) -> Result<Vec<Value>> {
    let files = generate_synthetic_dataset(generator)?;
    let manifest: PathBuf = write_dataset(out, &files)?;
    Ok(vec![json!({"complexes": files.len(), "manifest": manifest.display().to_string()})])
}
