//! Random cycle configurations whose star groups respect the local
//! structure of a reduced graph.
//!
//! A configuration is admissible when, with positions taken mod `2k`:
//! * no position holds two anchors;
//! * no two anchors sit two positions apart;
//! * for even `p`, neither `{p, p+1, p+4}` nor `{p+1, p+4, p+5}` are all
//!   anchors;
//! * every cycle through two anchors of one group, closed along either
//!   cycle arc, has length 6 or at least 9 in the underlying graph.

use super::{ArtifactOrigin, CycleConfig, StarGroup};
use rand::seq::SliceRandom;
use rand::Rng;

/// Length in the graph of the forward arc from position `p` to `q`; a
/// green edge stands for a path of length 2.
pub fn arc_length(k: usize, p: usize, q: usize) -> usize {
    let n = 2 * k;
    let mut len = 0;
    let mut x = p;
    while x != q {
        len += if x.is_multiple_of(2) { 2 } else { 1 };
        x = (x + 1) % n;
    }
    len
}

fn allowed_cycle_length(len: usize) -> bool {
    len == 6 || len >= 9
}

/// Checks the admissibility conditions listed in the module docs.
pub fn is_admissible(cfg: &CycleConfig) -> bool {
    if cfg.validate().is_err() {
        return false;
    }
    let n = 2 * cfg.k;
    let mut at = vec![false; n];
    for g in &cfg.groups {
        for &p in &g.anchors {
            at[p] = true;
        }
    }
    for p in 0..n {
        if at[p] && at[(p + 2) % n] {
            return false;
        }
        if p % 2 == 0 {
            let a = |d: usize| at[(p + d) % n];
            if (a(0) && a(1) && a(4)) || (a(1) && a(4) && a(5)) {
                return false;
            }
        }
    }
    cfg.groups.iter().all(|g| {
        let a = &g.anchors;
        (0..a.len()).all(|i| {
            (i + 1..a.len()).all(|j| {
                let d = g.origin.anchor_distance(i, j);
                allowed_cycle_length(arc_length(cfg.k, a[i], a[j]) + d)
                    && allowed_cycle_length(arc_length(cfg.k, a[j], a[i]) + d)
            })
        })
    })
}

/// Star sizes of each origin, in anchor order.
fn star_sizes(origin: ArtifactOrigin) -> &'static [usize] {
    match origin {
        ArtifactOrigin::Isolated3Star => &[3],
        ArtifactOrigin::Adjacent2Stars => &[2, 2],
        ArtifactOrigin::TwoOneTwo => &[2, 1, 2],
        ArtifactOrigin::TwoOneNotTwo => &[2, 1],
    }
}

fn random_group<R: Rng + ?Sized>(rng: &mut R, k: usize, free: &[usize]) -> Option<StarGroup> {
    let origin = *ArtifactOrigin::ALL.choose(rng).expect("nonempty");
    let count = origin.anchor_count();
    if free.len() < count {
        return None;
    }
    let picked: Vec<usize> = free.choose_multiple(rng, count).copied().collect();
    let mut anchors = Vec::with_capacity(count);
    let mut rest = picked.as_slice();
    for &size in star_sizes(origin) {
        let (star, tail) = rest.split_at(size);
        let mut star = star.to_vec();
        star.sort_unstable();
        anchors.extend(star);
        rest = tail;
    }
    debug_assert!(anchors.iter().all(|&p| p < 2 * k));
    Some(StarGroup { origin, anchors })
}

/// Greedily places random star groups, keeping each one only if the
/// configuration stays admissible.
pub fn random_config<R: Rng + ?Sized>(rng: &mut R, k: usize, attempts: usize) -> CycleConfig {
    let mut cfg = CycleConfig { k, groups: Vec::new() };
    for _ in 0..attempts {
        let mut used = vec![false; 2 * k];
        for g in &cfg.groups {
            for &p in &g.anchors {
                used[p] = true;
            }
        }
        let free: Vec<usize> = (0..2 * k).filter(|&p| !used[p]).collect();
        let Some(group) = random_group(rng, k, &free) else {
            continue;
        };
        cfg.groups.push(group);
        if !is_admissible(&cfg) {
            cfg.groups.pop();
        }
    }
    cfg
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn arc_lengths_cover_the_cycle() {
        let k = 5;
        assert_eq!(arc_length(k, 0, 1), 2);
        assert_eq!(arc_length(k, 1, 2), 1);
        for p in 0..2 * k {
            for q in 0..2 * k {
                if p != q {
                    assert_eq!(arc_length(k, p, q) + arc_length(k, q, p), 3 * k);
                }
            }
        }
    }

    #[test]
    fn admissibility_rules() {
        let star = |anchors: Vec<usize>| CycleConfig {
            k: 12,
            groups: vec![StarGroup {
                origin: ArtifactOrigin::Isolated3Star,
                anchors,
            }],
        };
        // arcs 0->8 (12), 8->16 (12), 16->0 (12): cycles of length 14
        assert!(is_admissible(&star(vec![0, 8, 16])));
        // anchors two apart
        assert!(!is_admissible(&star(vec![0, 2, 12])));
        // arc 0->4 has length 6, closing a cycle of length 8
        assert!(!is_admissible(&star(vec![0, 4, 14])));
        // reused position
        assert!(!is_admissible(&star(vec![0, 0, 14])));
    }

    #[test]
    fn generated_configs_are_admissible_and_nonempty() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut groups = 0;
        for _ in 0..200 {
            let k = rng.gen_range(6..=24);
            let cfg = random_config(&mut rng, k, 12);
            assert!(is_admissible(&cfg));
            groups += cfg.groups.len();
        }
        assert!(groups > 200, "only {groups} groups placed");
    }
}
