# -*- coding: utf-8 -*-
#
# randexp: thermodynamic formalism for random exponential maps
#
# Copyright © 2026 The randexp developers
#
# randexp is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# randexp is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with randexp.  If not, see <https://www.gnu.org/licenses/>.

import logging

import numpy as np
from scipy.stats import qmc

from ..exc import DomainError
from ..config import Config
from ..driver import sample_sequence
from ..cylinder import TWO_PI
from ..measure import (
    CSV_COLUMNS, seed_measure, measure_from_csv, iter_phi, p_space_check,
    conformality_residual, ball_sets, cesaro_invariant,
)
from ..pressure import LYAPUNOV_TERMS, lyapunov_along
from ..transfer import ConstantsTable, empirical_sandwich, sandwich_grid
from ..presenters.formats import Artifacts

from .utils import Command, TRANSFER_KEYS

logger = logging.getLogger(__name__)


class MeasureCommand(Command):
    name = 'measure'
    help = "Approximate the conformal measure at fiber 0 and audit it"
    KEYS = TRANSFER_KEYS + ('n', 'atoms', 'input', 'w_max', 'balls', 'ball_radius')

    def run(self):
        config = self.config
        tp = config.transfer_params()
        cfg = config.driver_config()

        if config.n < 1:
            raise DomainError("The measure command needs n >= 1")

        seq = sample_sequence(cfg, config.n)

        if config.input:
            with open(config.input, newline='') as f:
                nu0 = measure_from_csv(f, config.n)
        else:
            nu0 = seed_measure(config.atoms, seq, config.n)

        family = [nu0]
        lambdas = []
        for step in iter_phi(tp, seq, nu0, config.n, seed=cfg.seed):
            family.append(step.measure)
            lambdas.append(step.lam)
        family.reverse()

        d, D = empirical_sandwich(tp, sandwich_grid(np.logspace(-2, 2, 9), 16))
        constants = ConstantsTable(tp.t, d, D)
        constants.record_lambdas(lambdas)

        M0 = Config().M0
        report = p_space_check(tp, constants, family, seq, config.w_max,
            [2.0, 5.0, M0, 2 * M0])

        centres = qmc.Halton(d=2, scramble=False).random(config.balls)
        centres = np.column_stack([-2 + 4 * centres[:, 0], TWO_PI * centres[:, 1]])
        balls = ball_sets(centres, config.ball_radius)
        # step is the fiber 0 step; pulled_back is ν_0 before resampling
        residual = conformality_residual(tp, seq[0], step.pulled_back, family[1],
            step.lam, balls)
        resampled_residual = conformality_residual(tp, seq[0], family[0],
            family[1], step.lam, balls)

        final = family[0]
        logs = np.log(lambdas)

        invariant = {}
        if config.n >= 2:
            estimate = cesaro_invariant(tp, seq, family, config.n - 1)
            terms = max(1, min(config.n // 2, LYAPUNOV_TERMS))
            invariant = {
                'fiber': estimate.fiber,
                'invariance_residual': estimate.invariance_residual,
                'lyapunov': lyapunov_along(seq, family, terms - 1, config.n - 1, terms),
            }

        return Artifacts(
            self.name,
            self.metadata({
                'lambdas': lambdas,
                'log_lambda_mean': float(logs.mean()),
                'conformality_residual': residual,
                'resampled_residual': resampled_residual,
                'p_space': report.as_dict(),
                'atoms': len(final),
                'invariant': invariant,
            }),
            columns=CSV_COLUMNS,
            rows=zip(final.re, final.im, final.weights),
            summary=[
                ('atoms', len(final)),
                ('lambda (fiber 0)', lambdas[-1]),
                ('conformality residual', residual),
                ('Q_M0 mass >= 1/2', report.cond_2_1),
                ('mean log lambda', float(logs.mean())),
            ],
        )
