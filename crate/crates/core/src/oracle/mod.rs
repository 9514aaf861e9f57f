//! Brute-force ground truth: braiding-move orbits for monoids and
//! Cayley-ball spheres for groups embedded in `G × Z^k`.

mod ball;
mod infinite;
mod orbit;

pub use ball::{
    full_conjugation_generators, group_ball_enumerate, reflection_generators, transposition_generators,
    BallEnumeration, BallGenerator, DEFAULT_BALL_BUDGET, MAX_LATTICE_RANK,
};
pub use infinite::{infinite_orbit_classes, infinite_orbit_equal, WindowedClasses};
pub use orbit::{
    monoid_orbit_enumerate, orbit_equal, orbit_of_word, LengthOrbits, OrbitEnumeration, DEFAULT_ORBIT_BUDGET,
};
