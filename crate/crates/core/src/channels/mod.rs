//! Quantum channels in Kraus, Choi and Stinespring form, conversions between
//! them, composition, complements and the Γ reshuffle.

mod choi;
mod io;
mod kraus;
mod linear_map;
mod stinespring;

pub use choi::{
    apply_choi, choi_of_linear_map, choi_to_kraus, gamma_involution, natural_to_choi, reshuffle, ChoiMatrix, CP_TOL, KRAUS_CUTOFF,
};
pub use io::{channel_from_json, channel_to_json, read_channel_file, write_atomic, write_channel_file};
pub use kraus::{apply, choi_rank, compose, kraus_to_choi, kraus_to_stinespring, Channel, KrausChannel, COMPLETENESS_TOL};
pub use linear_map::MapSpectrum;
pub use stinespring::{complementary, StinespringIsometry};
