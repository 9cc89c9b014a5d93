# Network size models and sensor draws
from .size_models import (
    SizeModel, Deterministic, MixedPoisson, EnergyStopped, SensorDraw,
    deterministic, mixed_poisson, energy_stopped, energy_phi, stopping_index,
    limit_law, draw_size, draw_sizes, draw_network, clock_offsets, size_pmf,
)

__all__ = [
    'SizeModel', 'Deterministic', 'MixedPoisson', 'EnergyStopped', 'SensorDraw',
    'deterministic', 'mixed_poisson', 'energy_stopped', 'energy_phi', 'stopping_index',
    'limit_law', 'draw_size', 'draw_sizes', 'draw_network', 'clock_offsets', 'size_pmf',
]
