import math
import warnings
warnings.filterwarnings("ignore")
from flipline.landscape import ModelParams
from flipline.config import DEFAULT
from flipline import kinetics as K

chi = math.log((math.sqrt(2.0) + 1.0) / (math.sqrt(2.0) - 1.0))
print("closed form chi(mu=1):", repr(chi))

al = 1e-3
p = ModelParams(mu=1.0, alpha_d=al, lam=0.05, kappa=0.1)
ra_deep = K.activation_energy(p, +1, DEFAULT)
ra_shal = K.activation_energy(p, -1, DEFAULT)
delta = K.delta_activation(p, DEFAULT)
print("R_A(+1) =", repr(ra_deep))
print("R_A(-1) =", repr(ra_shal))
print("delta_activation =", repr(delta))
print("difference check |delta - (RA+ - RA-)| =",
      abs(delta - (ra_deep - ra_shal)))
fd = (ra_deep - ra_shal) / (2.0 * al)
print("FD chi from R_A pair:", repr(fd), " rel err:", abs(fd / chi - 1.0))
fd2 = delta / (2.0 * al)
print("FD chi from delta:   ", repr(fd2), " rel err:", abs(fd2 / chi - 1.0))

# mesh invariance: tighter and looser tolerances must agree
st_tight = DEFAULT.with_overrides(activation_rel=1e-11, activation_abs=1e-11)
ra_t = K.activation_energy(p, +1, st_tight)
print("R_A(+1) tight settings:", repr(ra_t), " diff:", abs(ra_t - ra_deep))
