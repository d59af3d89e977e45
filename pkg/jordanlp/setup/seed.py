import logging

import numpy as np
import xsimlab as xs

from ..utils.rng import batch_seed


@xs.process
class SeedGenerator:
    """Publishes `seed_state`, the seed of the current batch. Batch seeds are
    successive children of one SeedSequence over `seed_entropy`, so batch n
    of a campaign always sees the same seed, and each suite turns it into
    its own stream with `suite_rng`.
    """
    seed_entropy = xs.variable(static=True, intent='in', default=0,
                               description='64-bit campaign seed')
    seed_state = xs.variable(global_name='seed_state', intent='out')

    def initialize(self):
        self._batches = np.random.SeedSequence(entropy=int(self.seed_entropy))
        self.seed_state = batch_seed(self._batches)
        logging.debug(f"campaign seed {int(self.seed_entropy)}: first batch seed {self.seed_state}")

    def run_step(self):
        self.seed_state = batch_seed(self._batches)
