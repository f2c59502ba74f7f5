"""Recompute the parameter tables of the shipped codes and stress one of them.

Run with ``python3 demos/tables_and_simulation.py``.
"""

from twistcode.channel import ChannelSpec, simulate
from twistcode.decoder import DecoderState
from twistcode.fixtures import load_code, load_ubb
from twistcode.report import report_tables

print(report_tables().format())

state = DecoderState(load_code("s6"), load_ubb("s6"))
print()
for e in range(state.r_tw + 3):
    stats = simulate(state, ChannelSpec(e, rng_seed=1, trials=2000), stress=True)
    print(f"S6 code, {e} errors: success {stats.success_rate:.3f}, "
          f"miscorrections {stats.miscorrections}, max attempts {stats.max_attempts}/{stats.bound}")
