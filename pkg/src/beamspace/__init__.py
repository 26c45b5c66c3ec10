"""Bit-accurate beamspace equalization simulator for mmWave massive MU-MIMO."""

from .channel import (ChannelMatrix, PathSet, ScenarioConfig, apply_power_control,
                      draw_scenario, steering_vector, synth_ue_channel)
from .equalize import (EqualizerMatrix, lmmse_filter, omp_filter, quantize_filter,
                       residual_objective)
from .frontend import (AdcConfig, ReceiveVector, dft_unitary, optimal_unit_step,
                       quantize_adc, receive, unified_step)
from .harness import (BerPoint, ParetoPoint, SimConfig, pareto_sweep,
                      run_ber_curve, run_ber_point, snr_operating_point)
from .hwmodel import ArchModel, power_proxy, savings_vs_baseline, throughput_bps
from .modem import demap_hard, map_bits
from .numerics import (FixedFormat, FxComplexArray, fx_requantize, fx_value,
                       solve_hermitian_pd, to_fixed)
from .spade import (ActivityReport, EstimateVector, ThresholdPair, adaptive_mvm,
                    exact_mvm_fixed, linf_tilde, masked_reference)

__version__ = "0.1.0"
