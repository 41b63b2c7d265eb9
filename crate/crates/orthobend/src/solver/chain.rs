//! Turn realization along chains and cycles.
//!
//! A chain of `t` internal degree-2 vertices, walked end to end, accumulates a
//! turn number: each internal vertex contributes a turn in {-1, 0, +1}
//! (270°, 180°, 90° on the sweep side) and each edge bend contributes ±1.
//! Realizing a prescribed total with the fewest bends is a tiny subset-sum
//! problem over the per-vertex turn domains; the same DP also settles simple
//! cycles (target +4 around the inner face).

/// Per-vertex turn domain, as a bitmask: bit 0 = turn −1 (left), bit 1 = 0,
/// bit 2 = +1 (right).
pub type TurnDomain = u8;

pub const TURN_LEFT: TurnDomain = 0b001;
pub const TURN_NONE: TurnDomain = 0b010;
pub const TURN_RIGHT: TurnDomain = 0b100;
pub const TURN_ANY: TurnDomain = 0b111;
/// Some 90° corner must stay 90°/270°: no flat (180°/180°) split.
pub const TURN_REFLEX: TurnDomain = 0b101;
/// Left turn or straight, never a right turn.
pub const TURN_NON_RIGHT: TurnDomain = 0b011;

const TURN_VALUES: [(i32, TurnDomain); 3] =
    [(-1, TURN_LEFT), (0, TURN_NONE), (1, TURN_RIGHT)];

/// Assigns a turn from each domain and picks a bend count so the grand total
/// hits `target`; bends are free-form ±1 contributions, so the minimum bend
/// count is the distance from `target` to the nearest achievable vertex-turn
/// sum. Returns the per-vertex turns and that bend count, or `None` when some
/// domain is empty.
pub fn chain_realize(domains: &[TurnDomain], target: i32) -> Option<(Vec<i8>, usize)> {
    let t = domains.len();
    // reachable[i] holds the sums achievable by the first i vertices, offset by t.
    let width = 2 * t + 1;
    let mut reachable = vec![vec![false; width]; t + 1];
    reachable[0][t] = true;
    for (i, &dom) in domains.iter().enumerate() {
        if dom == 0 {
            return None;
        }
        for s in 0..width {
            if !reachable[i][s] {
                continue;
            }
            for &(turn, bit) in &TURN_VALUES {
                if dom & bit != 0 {
                    reachable[i + 1][(s as i32 + turn) as usize] = true;
                }
            }
        }
    }
    // Closest achievable sum; ties break toward the smaller sum for determinism.
    let mut best: Option<(usize, usize)> = None; // (distance, slot)
    for s in 0..width {
        if reachable[t][s] {
            let sum = s as i32 - t as i32;
            let dist = (target - sum).unsigned_abs() as usize;
            if best.map_or(true, |(d, _)| dist < d) {
                best = Some((dist, s));
            }
        }
    }
    let (bends, mut slot) = best?;
    // Reconstruct turns back to front: vertex i moved slot by its turn.
    let mut turns = vec![0i8; t];
    for i in (0..t).rev() {
        let dom = domains[i];
        for &(turn, bit) in &TURN_VALUES {
            let prev = slot as i32 - turn;
            if dom & bit != 0
                && (0..width as i32).contains(&prev)
                && reachable[i][prev as usize]
            {
                turns[i] = turn as i8;
                slot = prev as usize;
                break;
            }
        }
    }
    Some((turns, bends))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unconstrained_chains_pay_only_the_overflow() {
        for t in 0..6usize {
            for target in -9i32..=9 {
                let domains = vec![TURN_ANY; t];
                let (turns, bends) = chain_realize(&domains, target).unwrap();
                let expected = (target.unsigned_abs() as usize).saturating_sub(t);
                assert_eq!(bends, expected, "t={t} target={target}");
                let sum: i32 = turns.iter().map(|&x| x as i32).sum();
                assert_eq!(
                    sum.abs_diff(target) as usize,
                    bends,
                    "turn sum must sit `bends` away from the target"
                );
            }
        }
    }

    #[test]
    fn reflex_domains_enforce_parity() {
        // Two vertices that must each turn ±1 can reach only even sums.
        let domains = vec![TURN_REFLEX; 2];
        let (turns, bends) = chain_realize(&domains, 1).unwrap();
        assert_eq!(bends, 1);
        assert!(turns.iter().all(|&t| t != 0));
        let (_, bends) = chain_realize(&domains, 2).unwrap();
        assert_eq!(bends, 0);
    }

    #[test]
    fn forced_left_turns_count_against_the_target() {
        let domains = vec![TURN_LEFT; 3];
        let (turns, bends) = chain_realize(&domains, 4).unwrap();
        assert_eq!(turns, vec![-1, -1, -1]);
        assert_eq!(bends, 7);
    }

    #[test]
    fn non_right_domains_cap_the_positive_sum() {
        let domains = vec![TURN_NON_RIGHT; 4];
        let (turns, bends) = chain_realize(&domains, 4).unwrap();
        assert_eq!(bends, 4, "no positive vertex turns are available");
        assert!(turns.iter().all(|&t| t <= 0));
    }

    #[test]
    fn empty_domain_is_unrealizable() {
        assert!(chain_realize(&[TURN_ANY, 0], 0).is_none());
    }

    #[test]
    fn zero_vertices_need_target_many_bends() {
        let (turns, bends) = chain_realize(&[], -3).unwrap();
        assert!(turns.is_empty());
        assert_eq!(bends, 3);
    }
}
