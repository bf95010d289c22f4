import warnings
warnings.filterwarnings("ignore")
from flipline.landscape import ModelParams
from flipline.config import DEFAULT
from flipline import kinetics as K

# 1. cross-validate the action-difference integral against direct
#    quadrature on an interval where both work (mu < 1, no bands)
p = ModelParams(mu=0.2, alpha_d=0.1, lam=0.05, kappa=0.1)
g_c, _ = K.critical_quasienergy(p)
g1, g2 = -0.30, -0.22
direct = K._piece_integral(p, g_c, -1.0, g_c - g2, g_c - g1, DEFAULT)
via_actions = K._band_action_integral(p, g1, g2, DEFAULT)
print("mu=0.2 cross-check:")
print("  direct     ", repr(direct))
print("  via actions", repr(via_actions))
print("  rel err    ", abs(via_actions / direct - 1.0))

# 2. same cross-check at mu=1, alpha=1e-3 on a resolvable interval
#    outside the confluent band
p1 = ModelParams(mu=1.0, alpha_d=1e-3, lam=0.05, kappa=0.1)
g_c1, _ = K.critical_quasienergy(p1)
ga, gb = -1e-4, -1e-5
direct1 = K._piece_integral(p1, g_c1, -1.0, g_c1 - gb, g_c1 - ga, DEFAULT)
via1 = K._band_action_integral(p1, ga, gb, DEFAULT)
print("mu=1.0 outside-band cross-check:")
print("  direct     ", repr(direct1))
print("  via actions", repr(via1))
print("  rel err    ", abs(via1 / direct1 - 1.0))

# 3. the actual confluent band at mu=1, alpha=1e-3
print("confluent points:", K._confluent_points(p1), " g_c =", g_c1)
lo, hi = -0.2, g_c1
left = K._left_piece_with_bands(p1, g_c1, lo, hi, DEFAULT)
print("left piece with bands over [-0.2, g_c]:", repr(left))
