"""Python bindings for the dresslat simulator core."""

from ._dresslat import (
    BlockadeModel,
    ConfigError,
    DomainError,
    DressingField,
    LatticeConfig,
    LossSystem,
    PotentialSample,
    Qubit,
    Species,
    adiabatic_potentials,
    collisional_phase,
    decoherence_budget,
    fidelity_scan,
    gamma_eff,
    gate_truth_table,
    gradient_site_splitting,
    load_species_preset,
    logical_map,
    nonadiabatic_coupling,
    nonadiabatic_loss_scaling,
    period_averaged_admixture,
    potential_scan,
    resonance_offset,
    strontium87,
    survival_probability,
    tensor_coefficient,
    transport_colocate,
    trap_frequency,
)

__all__ = [name for name in dir() if not name.startswith("_")]
