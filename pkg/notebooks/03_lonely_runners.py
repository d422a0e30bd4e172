"""
Shifted lonely runners for three speeds
=======================================

Every instance reaches distance 1/4 from the origin; the extremal 1:2:3
ratio needs a choice of spectator.
"""

from tfrunner.runners import RunnerInstance, find_lonely_time, margin_profile, select_spectator

inst = RunnerInstance((1, 2, 3), (0, 0, 0))
t, m = margin_profile(inst, 0.0, 1.0, 1e-4)
print(f"sup margin over one period: {m.max():.6f} at t = {t[m.argmax()]:.4f}")

# random starts, generic speeds: a little more than 1/4 is reachable
generic = RunnerInstance((1.0, 2.5, 4.0), (0.13, 0.71, 0.42))
hit = find_lonely_time(generic, 0.25 + 1e-3)
print(f"lonely at t = {hit.t:.6f} with margin {hit.margin:.6f}")

# zero starts with 1:2:3: the spectator at 1 is never lonely enough
v = select_spectator(inst)
print("spectator:", v.spectator.value, "interval:", v.witness_interval)
