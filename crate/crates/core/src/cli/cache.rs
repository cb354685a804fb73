use crate::equilibrium::{solve_equilibrium, EquilibriumMeasure, Potential};
use crate::error::Result;
use crate::orthopoly::{recurrence_table, RecurrenceTable, WeightSpec};
use crate::records::{
    cache_dir, cache_key, measure_from_text, measure_to_text, read_cached, recurrence_from_text,
    recurrence_to_text, write_cached,
};

/// Equilibrium measure, read from or written to the cache directory when one is set.
pub fn measure(v: &Potential) -> Result<EquilibriumMeasure> {
    let Some(dir) = cache_dir() else {
        return solve_equilibrium(v);
    };
    let key = cache_key("measure", v, &[]);
    if let Some(mu) = read_cached(&dir, &key).and_then(|t| measure_from_text(&t).ok()) {
        if &mu.potential == v {
            return Ok(mu);
        }
    }
    let mu = solve_equilibrium(v)?;
    // A failed cache write only costs a recomputation next time.
    let _ = write_cached(&dir, &key, &measure_to_text(&mu));
    Ok(mu)
}

pub fn table(w: &WeightSpec, n_max: usize) -> Result<RecurrenceTable> {
    if w.truncation.is_some() {
        return recurrence_table(w, n_max);
    }
    let Some(dir) = cache_dir() else {
        return recurrence_table(w, n_max);
    };
    let key = cache_key("recurrence", &w.potential, &[w.n_param, n_max as f64]);
    if let Some((t, v)) = read_cached(&dir, &key).and_then(|s| recurrence_from_text(&s).ok()) {
        if v == w.potential && t.n_param == w.n_param && t.n_max == n_max {
            return Ok(t);
        }
    }
    let t = recurrence_table(w, n_max)?;
    let _ = write_cached(&dir, &key, &recurrence_to_text(&t, &w.potential));
    Ok(t)
}
