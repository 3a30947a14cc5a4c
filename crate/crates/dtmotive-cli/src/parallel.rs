//! Parallel shard execution for the counting oracle.
//!
//! Shards are independent (the first outer variable is pinned per shard)
//! and their partial tallies are combined by commutative addition, so the
//! parallel result is bit-identical to the sequential one.

use dtmotive::count::{count_shard, CountRunner, CountTask, ShardOutcome};
use dtmotive::Result;
use rayon::prelude::*;

pub struct RayonRunner {
    pool: Option<rayon::ThreadPool>,
}

impl RayonRunner {
    /// `jobs = None` uses rayon's global default (all cores).
    pub fn new(jobs: Option<usize>) -> Self {
        let pool = jobs.map(|n| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .expect("thread pool construction cannot fail for n >= 1")
        });
        RayonRunner { pool }
    }

    fn run_shards(&self, task: &CountTask) -> Result<Vec<ShardOutcome>> {
        (0..task.shard_count())
            .into_par_iter()
            .map(|shard| count_shard(task, shard))
            .collect()
    }
}

impl CountRunner for RayonRunner {
    fn run(&self, task: &CountTask) -> Result<Vec<ShardOutcome>> {
        match &self.pool {
            Some(pool) => pool.install(|| self.run_shards(task)),
            None => self.run_shards(task),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dtmotive::count::{count_by_value, SequentialRunner};
    use dtmotive::strata::cell_specs;
    use dtmotive::Superpotential;

    #[test]
    fn parallel_counts_match_sequential() {
        let w = Superpotential::quantum();
        let spec = &cell_specs(&w, 1).unwrap()[0];
        let task = CountTask::from_spec(spec, 5).unwrap();
        let seq = count_by_value(&task, &SequentialRunner).unwrap();
        let par = count_by_value(&task, &RayonRunner::new(None)).unwrap();
        let par2 = count_by_value(&task, &RayonRunner::new(Some(2))).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq, par2);
    }
}
