use std::collections::{HashMap, HashSet};
use std::sync::atomic::AtomicI64;
use std::sync::Mutex;
use std::thread;

use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::*;
use crate::reference::CoarseLockMap;
use crate::Error;
use crate::threadloop::prefill;

fn params(range: u64, initial_size: u64, seed: u64) -> BenchmarkParameters {
    BenchmarkParameters { range, initial_size, seed, ..Default::default() }
}

fn identity(range: u64) -> Arc<KeyGeneratorData> {
    Arc::new(KeyGeneratorData::identity(range).unwrap())
}

fn zipf_pmf(alpha: f64, n: u64) -> Vec<f64> {
    let w: Vec<f64> = (1..=n).map(|k| (k as f64).powf(-alpha)).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

fn chi_square_uniform(counts: &[u64]) -> (f64, f64) {
    let n: u64 = counts.iter().sum();
    let expected = n as f64 / counts.len() as f64;
    let stat = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let critical = ChiSquared::new((counts.len() - 1) as f64).unwrap().inverse_cdf(0.999);
    (stat, critical)
}

// ---- Default ----

#[test]
fn default_single_key() {
    let mut g = DefaultKeyGenerator::new(&DefaultParameters::default(), identity(1), Streams::new(1, 0)).unwrap();
    for _ in 0..100 {
        assert_eq!(g.next_get(), 0);
        assert_eq!(g.next_insert(), 0);
        assert_eq!(g.next_remove(), 0);
        assert_eq!(g.next_prefill(), 0);
    }
}

#[test]
fn default_zipfian_composes_with_identity() {
    let p = DefaultParameters { distribution: DistributionSpec::zipfian(1.0) };
    let mut g = DefaultKeyGenerator::new(&p, identity(3), Streams::new(2, 0)).unwrap();
    let n = 1_000_000;
    let mut counts = [0u64; 3];
    for _ in 0..n {
        counts[g.next_get() as usize] += 1;
    }
    for (c, e) in counts.iter().zip([6.0 / 11.0, 3.0 / 11.0, 2.0 / 11.0]) {
        assert!((*c as f64 / n as f64 - e).abs() < 0.005, "{counts:?}");
    }
}

#[test]
fn default_shuffled_contained() {
    let data = Arc::new(KeyGeneratorData::shuffled(1000, 3).unwrap());
    let p = DefaultParameters { distribution: DistributionSpec::zipfian(0.8) };
    let mut g = DefaultKeyGenerator::new(&p, data, Streams::new(3, 0)).unwrap();
    assert!((0..100_000).all(|_| g.next_get() < 1000));
}

// ---- Skewed Sets ----

fn sets(rp: f64, rs: f64, wp: f64, ws: f64, inter: f64) -> SkewedSetsParameters {
    SkewedSetsParameters { read_hot_prob: rp, read_hot_size: rs, write_hot_prob: wp, write_hot_size: ws, intersection: inter }
}

#[test]
fn skewed_sets_layout_arithmetic() {
    let layout = sets(0.9, 0.2, 0.9, 0.1, 0.5).layout(1000).unwrap();
    assert_eq!(layout, SkewedSetsLayout { read_len: 200, write_start: 150, write_len: 100, overlap: 50 });
    assert!(matches!(sets(0.9, 0.6, 0.9, 0.6, 0.0).layout(100), Err(Error::SkewedSetsLayout { .. })));
    assert!(matches!(sets(0.9, 0.0, 0.9, 0.1, 0.0).layout(100), Err(Error::EmptyHotSet { .. })));
}

#[test]
fn skewed_sets_all_reads_hot() {
    let mut g = SkewedSetsGenerator::new(&sets(1.0, 0.1, 0.5, 0.1, 0.0), identity(100), Streams::new(1, 0)).unwrap();
    assert!((0..100_000).all(|_| g.next_get() < 10));
}

#[test]
fn skewed_sets_full_overlap() {
    let data = Arc::new(KeyGeneratorData::shuffled(1000, 5).unwrap());
    let mut g = SkewedSetsGenerator::new(&sets(1.0, 0.05, 1.0, 0.05, 1.0), data, Streams::new(5, 0)).unwrap();
    let reads: HashSet<_> = (0..100_000).map(|_| g.next_get()).collect();
    let updates: HashSet<_> = (0..100_000).map(|i| if i % 2 == 0 { g.next_insert() } else { g.next_remove() }).collect();
    assert_eq!(reads.len(), 50);
    assert_eq!(reads, updates);
}

#[test]
fn skewed_sets_disjoint_hot_sets() {
    let range = 1000;
    let data = Arc::new(KeyGeneratorData::shuffled(range, 7).unwrap());
    let p = sets(0.9, 0.1, 0.9, 0.1, 0.0);
    let layout = p.layout(range).unwrap();
    let read_hot: HashSet<u64> = (0..layout.read_len).map(|i| data.key_at(i)).collect();
    let write_hot: HashSet<u64> =
        (layout.write_start..layout.write_start + layout.write_len).map(|i| data.key_at(i)).collect();
    assert!(read_hot.is_disjoint(&write_hot));

    let mut g = SkewedSetsGenerator::new(&p, data, Streams::new(7, 0)).unwrap();
    let n = 1_000_000;
    let read_hits = (0..n).filter(|_| read_hot.contains(&g.next_get())).count();
    let write_hits = (0..n).filter(|i| write_hot.contains(&if i % 2 == 0 { g.next_insert() } else { g.next_remove() })).count();
    assert!((read_hits as f64 / n as f64 - 0.9).abs() <= 0.003);
    assert!((write_hits as f64 / n as f64 - 0.9).abs() <= 0.003);
}

// ---- Temporary Skewed ----

fn temporary(p: &TemporarySkewedParameters, range: u64, seed: u64) -> TemporarySkewedGenerator {
    TemporarySkewedGenerator::new(p, identity(range), Streams::new(seed, 0)).unwrap()
}

#[test]
fn temporary_degenerate_cycle() {
    let p = TemporarySkewedParameters::uniform_states(1, 10, 0, 1.0, 0.1);
    let mut g = temporary(&p, 1000, 1);
    for _ in 0..100_000 {
        let (phase, key) = g.next_with_phase();
        assert_eq!(phase, Phase::Excited(0));
        assert!(key < 100);
    }
}

#[test]
fn temporary_state_trace() {
    let p = TemporarySkewedParameters::uniform_states(2, 5, 3, 0.9, 0.1);
    let mut g = temporary(&p, 1000, 2);
    let mut expected = Vec::new();
    for i in 0..2 {
        expected.extend([Phase::Excited(i); 5]);
        expected.extend([Phase::Dormant(i); 3]);
    }
    let observed: Vec<_> = (0..48).map(|_| g.next_with_phase().0).collect();
    for cycle in observed.chunks(16) {
        assert_eq!(cycle, expected.as_slice());
    }
}

#[test]
fn temporary_per_state_durations_and_zero_phases() {
    let mut p = TemporarySkewedParameters::uniform_states(3, 0, 0, 0.5, 0.1);
    p.hot_times = Some(vec![2, 0, 1]);
    p.relax_times = Some(vec![0, 1, 0]);
    let mut g = temporary(&p, 100, 3);
    use Phase::*;
    let observed: Vec<_> = (0..8).map(|_| g.next_with_phase().0).collect();
    assert_eq!(observed, [Excited(0), Excited(0), Dormant(1), Excited(2), Excited(0), Excited(0), Dormant(1), Excited(2)]);
}

#[test]
fn temporary_hot_blocks_packed() {
    let mut p = TemporarySkewedParameters::uniform_states(3, 1, 0, 1.0, 0.4);
    p.hot_sizes = vec![0.4, 0.4, 0.3];
    let g = temporary(&p, 100, 4);
    assert_eq!(g.hot_block(0), (0, 40));
    assert_eq!(g.hot_block(1), (40, 40));
    assert_eq!(g.hot_block(2), (80, 30));
    let mut g = g;
    for _ in 0..30_000 {
        let (phase, key) = g.next_with_phase();
        let ok = match phase {
            Phase::Excited(0) => key < 40,
            Phase::Excited(1) => (40..80).contains(&key),
            Phase::Excited(2) => !(10..80).contains(&key),
            _ => unreachable!(),
        };
        assert!(ok, "{phase:?} {key}");
    }
}

#[test]
fn temporary_zero_skew_is_uniform() {
    let p = TemporarySkewedParameters::uniform_states(3, 7, 5, 0.0, 0.2);
    let mut g = temporary(&p, 100, 5);
    let mut counts = vec![0u64; 100];
    for _ in 0..1_000_000 {
        counts[g.next_get() as usize] += 1;
    }
    let (stat, critical) = chi_square_uniform(&counts);
    assert!(stat < critical, "{stat} >= {critical}");
}

#[test]
fn temporary_schedule_is_periodic() {
    let mut p = TemporarySkewedParameters::uniform_states(3, 4, 2, 0.8, 0.1);
    p.hot_times = Some(vec![4, 1, 6]);
    let cycle: u64 = (0..3).map(|i| p.hot_duration(i) + p.relax_duration(i)).sum();
    let mut g = temporary(&p, 500, 6);
    let phases: Vec<_> = (0..2 * cycle).map(|_| g.next_with_phase().0).collect();
    let (a, b) = phases.split_at(cycle as usize);
    assert_eq!(a, b);
}

#[test]
fn temporary_validation() {
    let mut p = TemporarySkewedParameters::uniform_states(2, 0, 0, 0.5, 0.1);
    assert!(matches!(p.validate(100), Err(Error::ZeroSchedule)));
    p.hot_time = 1;
    p.hot_probs.push(0.1);
    assert!(matches!(p.validate(100), Err(Error::Arity { .. })));
    let p = TemporarySkewedParameters::uniform_states(0, 1, 1, 0.5, 0.1);
    assert!(p.validate(100).is_err());
}

// ---- Creakers and Wave ----

fn wave_factory(range: u64, p: CreakersWaveParameters) -> CreakersWaveFactory {
    CreakersWaveFactory::new(p, identity(range), 1).unwrap()
}

fn wave_only(wave_size: f64) -> CreakersWaveParameters {
    CreakersWaveParameters { wave_size, ..Default::default() }
}

#[test]
fn wave_scripted_trace() {
    let f = wave_factory(10, wave_only(0.4));
    f.wave().set_cursors(2, 6);
    let mut g = f.wave_generator(0);
    assert_eq!(g.next_remove(), 2);
    assert_eq!(f.wave().cursors(), (3, 6));
    assert_eq!(g.next_insert(), 6);
    assert_eq!(f.wave().cursors(), (3, 7));
}

#[test]
fn wave_alternating_keeps_size() {
    let f = wave_factory(100, wave_only(0.2));
    let mut g = f.wave_generator(0);
    for i in 1..=250u64 {
        g.next_insert();
        g.next_remove();
        assert_eq!(f.wave().cursors(), (i, 20 + i));
    }
    // cursors wrap over the region of 100 positions
    assert_eq!(g.key_at_position(250), 50);
}

#[test]
fn wave_never_empties_or_overfills() {
    let f = wave_factory(10, wave_only(0.2));
    let mut g = f.wave_generator(0);
    for _ in 0..5 {
        g.next_remove();
    }
    assert_eq!(f.wave().cursors(), (1, 2));
    for _ in 0..20 {
        g.next_insert();
    }
    let (tail, head) = f.wave().cursors();
    assert_eq!(head - tail, 10);
}

#[test]
fn wave_gets_favor_head() {
    let f = wave_factory(1000, wave_only(0.5));
    let mut g = f.wave_generator(0);
    let mut counts = HashMap::new();
    for _ in 0..100_000 {
        *counts.entry(g.next_get()).or_insert(0u64) += 1;
    }
    assert!(counts.keys().all(|&k| k < 500));
    assert!(counts[&499] > counts[&498]);
    assert!(counts[&498] > *counts.get(&100).unwrap_or(&0));
}

#[test]
fn creaker_gets_only() {
    let p = CreakersWaveParameters { creaker_prob: 1.0, creaker_size: 0.1, ..wave_only(0.2) };
    let f = wave_factory(1000, p);
    let mut g = f.wave_generator(0);
    assert!((0..100_000).all(|_| g.next_get() >= 900));
}

#[test]
fn wave_prefill_order() {
    let p = CreakersWaveParameters { creaker_size: 0.1, ..wave_only(0.2) };
    let f = wave_factory(100, p);
    let mut g = f.wave_generator(0);
    let first: HashSet<_> = (0..10).map(|_| g.next_prefill()).collect();
    let second: HashSet<_> = (0..20).map(|_| g.next_prefill()).collect();
    assert_eq!(first, (90..100).collect());
    assert_eq!(second, (0..20).collect());
}

#[test]
fn wave_concurrent_cursors() {
    let threads = 8;
    let per_thread = 12_500;
    let f = wave_factory(1_000_000, wave_only(0.5));
    let (removed, inserted) = thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let mut g = f.wave_generator(t);
                s.spawn(move || {
                    let mut removed = Vec::with_capacity(per_thread);
                    let mut inserted = Vec::with_capacity(per_thread);
                    for _ in 0..per_thread {
                        inserted.push(g.next_insert());
                        removed.push(g.next_remove());
                    }
                    (removed, inserted)
                })
            })
            .collect();
        let mut all = (Vec::new(), Vec::new());
        for h in handles {
            let (r, i) = h.join().unwrap();
            all.0.extend(r);
            all.1.extend(i);
        }
        all
    });
    assert_eq!(f.wave().cursors(), (100_000, 600_000));
    let removed: HashSet<_> = removed.into_iter().collect();
    let inserted: HashSet<_> = inserted.into_iter().collect();
    assert_eq!(removed, (0..100_000).collect());
    assert_eq!(inserted, (500_000..600_000).collect());
}

/// Records every key passed to `get`.
#[derive(Default)]
struct GetRecorder {
    inner: CoarseLockMap,
    gets: Mutex<Vec<Key>>,
}

impl ConcurrentIndex for GetRecorder {
    fn get(&self, key: Key) -> Option<u64> {
        self.gets.lock().unwrap().push(key);
        self.inner.get(key)
    }
    fn put_if_absent(&self, key: Key, value: u64) -> Option<u64> {
        self.inner.put_if_absent(key, value)
    }
    fn remove(&self, key: Key) -> Option<u64> {
        self.inner.remove(key)
    }
    fn size(&self) -> usize {
        self.inner.size()
    }
    fn ordered_keys(&self) -> Vec<Key> {
        self.inner.ordered_keys()
    }
}

#[test]
fn wave_small_region_under_contention() {
    // long enough for threads to be preempted between the cursor loads
    let f = wave_factory(50, wave_only(0.1));
    let deadline = std::time::Instant::now() + std::time::Duration::from_millis(1500);
    thread::scope(|s| {
        for t in 0..8 {
            let mut g = f.wave_generator(t);
            s.spawn(move || {
                let mut i = 0usize;
                while std::time::Instant::now() < deadline {
                    i += 1;
                    if (i + t).is_multiple_of(2) {
                        g.next_insert();
                    } else {
                        g.next_remove();
                    }
                }
            });
        }
    });
    let (tail, head) = f.wave().cursors();
    assert!(tail < head && head - tail <= 50, "({tail}, {head})");
}

#[test]
fn creaker_warmup_counts() {
    let p = CreakersWaveParameters { creaker_size: 0.1, creaker_age: 1000, ..wave_only(0.2) };
    let f = wave_factory(1000, p.clone());
    let index = GetRecorder::default();
    assert_eq!(f.warmup(&index), 1000);
    let gets = index.gets.lock().unwrap();
    assert_eq!(gets.len(), 1000);
    assert!(gets.iter().all(|&k| k >= 900));

    let f = wave_factory(1000, CreakersWaveParameters { creaker_age: 0, ..p.clone() });
    assert_eq!(f.warmup(&index), 0);

    let no_creakers = CreakersWaveParameters { creaker_size: 0.0, ..p };
    let spec = KeyGeneratorSpec::CreakersAndWave(no_creakers);
    assert!(matches!(spec.build(&params(1000, 200, 1), true), Err(Error::NoCreakers(1000))));
}

#[test]
fn wave_validation() {
    let p = CreakersWaveParameters { creaker_size: 0.6, ..wave_only(0.5) };
    assert!(matches!(p.validate(&params(100, 110, 0)), Err(Error::CreakersWaveOverflow(_))));
    let p = CreakersWaveParameters { creaker_size: 0.1, ..wave_only(0.2) };
    assert!(matches!(p.validate(&params(100, 50, 0)), Err(Error::WaveInitialSize { expected: 30, got: 50 })));
    assert!(p.validate(&params(100, 30, 0)).is_ok());
    let spec = KeyGeneratorSpec::CreakersAndWave(p);
    assert_eq!(spec.required_initial_size(100), Some(30));
}

// ---- Leafs Handshake ----

fn leafs(p: LeafsHandshakeParameters, range: u64) -> LeafsHandshakeGenerator {
    let shared = LeafsHandshakeParameters::shared_cell(range);
    p.generator(identity(range), Streams::new(1, 0), &shared).unwrap()
}

#[test]
fn leafs_initial_cell_and_degenerate_offset() {
    let p = LeafsHandshakeParameters { insert_window: 1, direction: Direction::Right, ..Default::default() };
    let mut g = leafs(p, 1000);
    assert_eq!(g.last_removed(), 500);
    assert_eq!(g.next_insert(), 501);
    for _ in 0..1000 {
        let removed = g.next_remove();
        assert_eq!(g.next_insert(), (removed + 1) % 1000);
    }
}

#[test]
fn leafs_wraps_at_boundaries() {
    let p = LeafsHandshakeParameters { insert_window: 1, direction: Direction::Right, ..Default::default() };
    let g = leafs(p.clone(), 1000);
    g.set_last_removed(999);
    let mut g = g;
    assert_eq!(g.next_insert(), 0);
    let mut g = leafs(LeafsHandshakeParameters { direction: Direction::Left, ..p }, 1000);
    g.set_last_removed(0);
    assert_eq!(g.next_insert(), 999);
}

#[test]
fn leafs_folded_zipf_offsets() {
    let range = 10_000;
    let window = 100;
    let k = 5000;
    let p = LeafsHandshakeParameters::with_insert_distribution(DistributionSpec::zipfian(2.0));
    let mut g = leafs(p, range);
    g.set_last_removed(k);
    let n = 1_000_000;
    let mut by_distance = vec![0u64; window as usize + 1];
    let mut right = 0u64;
    for _ in 0..n {
        let key = g.next_insert();
        let d = key.abs_diff(k);
        assert!((1..=window).contains(&d));
        by_distance[d as usize] += 1;
        right += (key > k) as u64;
    }
    let pmf = zipf_pmf(2.0, window);
    let mut last = u64::MAX;
    for d in 1..=window as usize {
        let freq = by_distance[d] as f64 / n as f64;
        assert!((freq - pmf[d - 1]).abs() < 0.01, "distance {d}: {freq} vs {}", pmf[d - 1]);
        if d <= 5 {
            assert!(by_distance[d] < last);
            last = by_distance[d];
        }
    }
    assert!((right as f64 / n as f64 - 0.5).abs() < 0.005);
}

#[test]
fn leafs_inserts_follow_removes() {
    let p = LeafsHandshakeParameters::default();
    let mut g = leafs(p, 100_000);
    let mut removed = HashSet::from([50_000]);
    for i in 0..10_000 {
        if i % 3 == 0 {
            removed.insert(g.next_remove());
        } else {
            let base = g.last_removed();
            assert!(removed.contains(&base));
            let key = g.next_insert();
            let d = key.abs_diff(base).min(100_000 - key.abs_diff(base));
            assert!((1..=100).contains(&d));
        }
    }
}

#[test]
fn leafs_shared_cell_crosses_threads() {
    let spec = KeyGeneratorSpec::LeafsHandshake(LeafsHandshakeParameters {
        insert_window: 1,
        direction: Direction::Right,
        ..Default::default()
    });
    let f = spec.build(&params(1000, 0, 1), false).unwrap();
    let mut a = f.generator(0);
    let mut b = f.generator(1);
    let k = a.next_remove();
    assert_eq!(b.next_insert(), (k + 1) % 1000);

    // every build starts from a fresh cell
    let mut c = spec.build(&params(1000, 0, 1), false).unwrap().generator(1);
    assert_eq!(c.next_insert(), 501);
}

#[test]
fn leafs_per_thread_cells() {
    let spec = KeyGeneratorSpec::LeafsHandshake(LeafsHandshakeParameters {
        insert_window: 1,
        direction: Direction::Right,
        per_thread: true,
        ..Default::default()
    });
    let f = spec.build(&params(1000, 0, 1), false).unwrap();
    let mut a = f.generator(0);
    let mut b = f.generator(1);
    a.next_remove();
    assert_eq!(b.next_insert(), 501);
}

// ---- all generators ----

fn all_specs() -> Vec<KeyGeneratorSpec> {
    vec![
        KeyGeneratorSpec::Default(DefaultParameters { distribution: DistributionSpec::zipfian(0.99) }),
        KeyGeneratorSpec::SkewedSets(sets(0.9, 0.1, 0.8, 0.2, 0.5)),
        KeyGeneratorSpec::TemporarySkewed(TemporarySkewedParameters::uniform_states(3, 100, 50, 0.9, 0.05)),
        KeyGeneratorSpec::CreakersAndWave(CreakersWaveParameters { creaker_size: 0.1, ..wave_only(0.4) }),
        KeyGeneratorSpec::LeafsHandshake(LeafsHandshakeParameters::default()),
    ]
}

#[test]
fn ids_round_trip() {
    let ids: Vec<_> = all_specs().iter().map(|s| s.id()).collect();
    assert_eq!(ids, KeyGeneratorSpec::IDS);
}

#[test]
fn prefill_protocol_exact_for_every_generator() {
    for spec in all_specs() {
        for threads in [1usize, 4] {
            let range = 20_000;
            let initial = spec.required_initial_size(range).unwrap_or(range / 2);
            let f = spec.build(&params(range, initial, threads as u64), true).unwrap();
            let index = CoarseLockMap::new();
            let remaining = AtomicI64::new(initial as i64);
            thread::scope(|s| {
                for t in 0..threads {
                    let mut g = f.prefill_generator(t);
                    let (remaining, index) = (&remaining, &index);
                    s.spawn(move || prefill(remaining, &mut *g, index));
                }
            });
            assert_eq!(index.size() as u64, initial, "{spec} with {threads} threads");
        }
    }
}

#[test]
fn wave_prefill_populates_creakers_and_initial_wave() {
    let spec = KeyGeneratorSpec::CreakersAndWave(CreakersWaveParameters { creaker_size: 0.1, ..wave_only(0.3) });
    let f = spec.build(&params(1000, 400, 9), false).unwrap();
    let index = CoarseLockMap::new();
    crate::threadloop::run_prefill(&index, &*f, 400, 3).unwrap();
    let expected: Vec<u64> = (0..300).chain(900..1000).collect();
    assert_eq!(index.ordered_keys(), expected);
}

#[test]
fn generators_are_deterministic() {
    for spec in all_specs() {
        let draw = || {
            let f = spec.build(&params(5000, spec.required_initial_size(5000).unwrap_or(100), 42), true).unwrap();
            let mut g = f.generator(3);
            (0..2000)
                .map(|i| match i % 3 {
                    0 => g.next_get(),
                    1 => g.next_insert(),
                    _ => g.next_remove(),
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(), draw(), "{spec}");
    }
}

fn arb_spec() -> impl Strategy<Value = KeyGeneratorSpec> {
    let unit = 0.0..=1.0f64;
    prop_oneof![
        (0.0..3.0f64).prop_map(|a| KeyGeneratorSpec::Default(DefaultParameters { distribution: DistributionSpec::zipfian(a) })),
        (unit.clone(), 0.05..0.4f64, unit.clone(), 0.05..0.4f64, unit.clone()).prop_map(|(rp, rs, wp, ws, i)| {
            KeyGeneratorSpec::SkewedSets(sets(rp.min(0.99), rs, wp.min(0.99), ws, i))
        }),
        (1usize..5, 0u64..20, 0u64..20, 0.0..0.99f64, 0.05..0.3f64).prop_map(|(n, ht, rt, p, s)| {
            KeyGeneratorSpec::TemporarySkewed(TemporarySkewedParameters::uniform_states(n, ht + 1, rt, p, s))
        }),
        (unit.clone(), 0.05..0.4f64, 0.05..0.5f64).prop_map(|(cp, cs, ws)| {
            KeyGeneratorSpec::CreakersAndWave(CreakersWaveParameters { creaker_prob: cp, creaker_size: cs, ..wave_only(ws) })
        }),
        (1u64..500, 0.0..3.0f64).prop_map(|(w, a)| {
            KeyGeneratorSpec::LeafsHandshake(LeafsHandshakeParameters {
                insert_window: w,
                ..LeafsHandshakeParameters::with_insert_distribution(DistributionSpec::zipfian(a))
            })
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn keys_stay_in_range(spec in arb_spec(), range in 20u64..5000, seed in any::<u64>(), shuffle in any::<bool>()) {
        let initial = spec.required_initial_size(range).unwrap_or(range / 2);
        let f = spec.build(&params(range, initial, seed), shuffle).unwrap();
        let mut g = f.generator(0);
        let mut p = f.prefill_generator(0);
        for _ in 0..500 {
            prop_assert!(g.next_get() < range);
            prop_assert!(g.next_insert() < range);
            prop_assert!(g.next_remove() < range);
            prop_assert!(p.next_prefill() < range);
        }
    }
}
