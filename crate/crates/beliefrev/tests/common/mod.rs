//! Independent oracles for the integration suites.
//!
//! Everything here recomputes results by direct enumeration over the subset
//! lattice or by solving the defining constraint systems with dense linear
//! algebra. None of it calls the closed-form rules or transforms it is used
//! to check.
//!
//! Not every suite uses every oracle.
#![allow(dead_code)]

use beliefrev::{Frame, MassFunction, Partition, SubsetMask, Weight};

/// Belief by direct summation over all nonempty subsets of `set`.
pub fn brute_bel<T: Weight>(m: &MassFunction<T>, set: SubsetMask) -> T {
    let mut sum = T::zero();
    for (focal, mass) in m.focal() {
        if !focal.is_empty() && focal.is_subset_of(set) {
            sum += mass.clone();
        }
    }
    sum
}

/// Plausibility by direct summation over the focal sets meeting `set`.
pub fn brute_pl<T: Weight>(m: &MassFunction<T>, set: SubsetMask) -> T {
    let mut sum = T::zero();
    for (focal, mass) in m.focal() {
        if focal.intersects(set) {
            sum += mass.clone();
        }
    }
    sum
}

/// Upper approximation recomputed from the atom list.
pub fn brute_upper(partition: &Partition, set: SubsetMask) -> SubsetMask {
    partition
        .atoms()
        .iter()
        .filter(|atom| atom.intersects(set))
        .fold(SubsetMask::EMPTY, |acc, atom| acc.union(*atom))
}

/// The class of `upper` by filtering every nonempty subset of the frame.
pub fn brute_class(n: usize, partition: &Partition, upper: SubsetMask) -> Vec<SubsetMask> {
    (1u32..(1 << n))
        .map(SubsetMask::from_bits)
        .filter(|x| brute_upper(partition, *x) == upper)
        .collect()
}

/// Which conditional masses feed the within-class ratio constraints.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Route {
    /// C3F: geometrically conditioned prior, `m1(Z) / bel1(B)`.
    Geometric,
    /// C3R: Dempster-conditioned prior, `m1*(Z) / pl1(B)`.
    Dempster,
}

/// The conditional numerator `s1(Z)` for a class member `Z` of scope `b`,
/// recomputed by direct enumeration.
fn conditional_numerator(m1: &MassFunction<f64>, b: SubsetMask, z: SubsetMask, route: Route) -> f64 {
    match route {
        Route::Geometric => {
            let bel = brute_bel(m1, b);
            if bel <= 1e-12 {
                0.0
            } else {
                m1.mass(z) / bel
            }
        }
        Route::Dempster => {
            let pl = brute_pl(m1, b);
            if pl <= 1e-12 {
                return 0.0;
            }
            let mut transferred = 0.0;
            for (x, mass) in m1.focal() {
                if x.intersect(b) == z {
                    transferred += mass;
                }
            }
            transferred / pl
        }
    }
}

/// Gaussian elimination with partial pivoting on an augmented system.
/// Returns the unique solution, or `None` when the system is inconsistent or
/// underdetermined.
fn solve_linear(mut rows: Vec<Vec<f64>>, unknowns: usize) -> Option<Vec<f64>> {
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut used = vec![false; rows.len()];
    for col in 0..unknowns {
        let pivot = (0..rows.len())
            .filter(|&r| !used[r])
            .max_by(|&a, &b| rows[a][col].abs().partial_cmp(&rows[b][col].abs()).unwrap())?;
        if rows[pivot][col].abs() < 1e-10 {
            return None; // no pivot in this column: underdetermined
        }
        used[pivot] = true;
        pivot_rows.push(pivot);
        let scale = rows[pivot][col];
        for value in rows[pivot].iter_mut() {
            *value /= scale;
        }
        let pivot_row = rows[pivot].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot && row[col].abs() > 0.0 {
                let factor = row[col];
                for (value, pivot_value) in row.iter_mut().zip(&pivot_row) {
                    *value -= factor * pivot_value;
                }
            }
        }
    }
    // Leftover rows must have vanished or the system is inconsistent.
    for (r, row) in rows.iter().enumerate() {
        if !used[r] && row.iter().any(|v| v.abs() > 1e-7) {
            return None;
        }
    }
    let mut solution = vec![0.0; unknowns];
    for (col, &r) in pivot_rows.iter().enumerate() {
        solution[col] = rows[r][unknowns];
    }
    Some(solution)
}

/// Brute-force solution of the C1 + C3F (or C1 + C3R) constraint system over
/// the class-mass simplex, one independent linear system per class.
///
/// Returns the revised masses on nonempty sets, or `None` when the system has
/// no unique solution (a zero class sum under a positive update mass).
pub fn solve_revision_constraints(
    m1: &MassFunction<f64>,
    partition: &Partition,
    m2: &MassFunction<f64>,
    route: Route,
) -> Option<Vec<(SubsetMask, f64)>> {
    let n = m1.frame().n();
    let mut revised: Vec<(SubsetMask, f64)> = Vec::new();
    for scope_bits in 1u32..(1 << partition.atom_count()) {
        let scope = partition
            .atoms()
            .iter()
            .enumerate()
            .filter(|(i, _)| scope_bits & (1 << i) != 0)
            .fold(SubsetMask::EMPTY, |acc, (_, atom)| acc.union(*atom));
        let update = m2.mass(scope);
        let members = brute_class(n, partition, scope);
        if update.abs() <= 1e-12 {
            // Nonnegative masses with a zero class total are all zero.
            continue;
        }
        let s1: Vec<f64> = members
            .iter()
            .map(|z| conditional_numerator(m1, scope, *z, route))
            .collect();
        let k = members.len();
        let restricted: Vec<f64> = members
            .iter()
            .map(|x| {
                members
                    .iter()
                    .zip(&s1)
                    .filter(|(z, _)| z.is_subset_of(*x))
                    .map(|(_, v)| v)
                    .sum()
            })
            .collect();

        // Simplex side constraint: a member whose restricted prior sum is
        // zero forces (through the pair with the full member and
        // nonnegativity) every mass below it to zero, so those unknowns drop
        // out before the linear solve.
        let mut zeroed = vec![false; k];
        for (i, sum) in restricted.iter().enumerate() {
            if *sum <= 1e-12 {
                for (z, member) in members.iter().enumerate() {
                    if member.is_subset_of(members[i]) {
                        zeroed[z] = true;
                    }
                }
            }
        }
        let active: Vec<usize> = (0..k).filter(|&z| !zeroed[z]).collect();
        if active.is_empty() {
            return None; // zero class sum under a positive update
        }

        // Unknowns: one mass per active class member. Equations: every C3
        // pair, cross-multiplied, plus the class total required by C1.
        let columns = active.len();
        let mut rows: Vec<Vec<f64>> = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                let mut row = vec![0.0; columns + 1];
                for (slot, &z) in active.iter().enumerate() {
                    if members[z].is_subset_of(members[i]) {
                        row[slot] += restricted[j];
                    }
                    if members[z].is_subset_of(members[j]) {
                        row[slot] -= restricted[i];
                    }
                }
                rows.push(row);
            }
        }
        let mut total = vec![1.0; columns + 1];
        total[columns] = update;
        rows.push(total);

        let solution = solve_linear(rows, columns)?;
        for (slot, &z) in active.iter().enumerate() {
            if solution[slot].abs() > 1e-12 {
                revised.push((members[z], solution[slot]));
            }
        }
    }
    revised.sort_by_key(|(set, _)| *set);
    Some(revised)
}

/// True when every focal element of `m2` has a positive class sum in `m1`
/// under the given route, so the constraint system pins the revision down.
pub fn class_sums_positive(
    m1: &MassFunction<f64>,
    partition: &Partition,
    m2: &MassFunction<f64>,
    route: Route,
) -> bool {
    m2.focal().all(|(b, _)| {
        if b.is_empty() {
            return true;
        }
        brute_class(m1.frame().n(), partition, b)
            .into_iter()
            .map(|z| conditional_numerator(m1, b, z, route))
            .sum::<f64>()
            > 1e-9
    })
}

/// Exact-mode counterpart of [`class_sums_positive`]: checks that every focal
/// element of `m2` owns at least one focal set of `m1` in its class (for the
/// Dempster route, after intersecting with the element).
pub fn class_sums_positive_exact<T: Weight>(
    m1: &MassFunction<T>,
    partition: &Partition,
    m2: &MassFunction<T>,
    route: Route,
) -> bool {
    m2.focal().all(|(b, _)| {
        if b.is_empty() {
            return true;
        }
        match route {
            Route::Geometric => m1
                .focal()
                .any(|(x, _)| !x.is_empty() && brute_upper(partition, x) == b),
            Route::Dempster => m1.focal().any(|(x, _)| {
                let moved = x.intersect(b);
                !moved.is_empty() && brute_upper(partition, moved) == b
            }),
        }
    })
}

/// A prior guaranteed to put mass in the class of every focal element of
/// `m2`: one random class member per element plus extra random sets.
pub fn supported_prior<T: Weight, R: rand::Rng>(
    rng: &mut R,
    frame: &Frame,
    partition: &Partition,
    m2: &MassFunction<T>,
    extra: usize,
) -> MassFunction<T> {
    let mut sets: std::collections::BTreeSet<u32> = std::collections::BTreeSet::new();
    for (b, _) in m2.focal() {
        if b.is_empty() {
            continue;
        }
        // A random nonempty subset of each atom inside b stays in b's class.
        let mut member = SubsetMask::EMPTY;
        for atom in partition.atoms().iter().filter(|a| a.is_subset_of(b)) {
            let pick = rng.random_range(1..(1u32 << atom.card()));
            for (i, element) in atom.elements().enumerate() {
                if pick & (1 << i) != 0 {
                    member = member.union(SubsetMask::singleton(element));
                }
            }
        }
        sets.insert(member.bits());
    }
    let lattice = frame.lattice_size() as u32;
    let target = (sets.len() + extra).min(lattice as usize - 1);
    while sets.len() < target {
        sets.insert(rng.random_range(1..lattice));
    }
    let weights: Vec<i64> = (0..sets.len()).map(|_| rng.random_range(1..=9)).collect();
    let total: i64 = weights.iter().sum();
    let entries = sets
        .into_iter()
        .zip(weights)
        .map(|(bits, w)| (SubsetMask::from_bits(bits), T::from_ratio(w, total)));
    MassFunction::new(frame.clone(), entries).expect("generated masses sum to 1")
}
