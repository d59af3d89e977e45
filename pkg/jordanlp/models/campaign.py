import copy
import functools
import logging
import os
import time
from typing import Sequence, Union

import dask
import numpy as np
import xarray as xr
import xsimlab as xs
import yaml

from ..errors import ConfigError
from ..report import ReportAssembler, VerificationReport, config_digest, entries_from_document
from ..setup import SeedGenerator, SetupCampaign
from ..spec_parse import normalize_algebra_spec
from ..suites import SUITES
logging.basicConfig(level=logging.INFO)

RESERVED_KEYS = ('schema_version', 'suites', 'batches')
SCHEMA_VERSION = 1
THREADS_ENV = 'JORDANLP_THREADS'


def read_config(config_fp: str) -> dict:
    with open(config_fp, 'r') as f:
        config = yaml.safe_load(f)
    if config is None:
        return dict()
    if not isinstance(config, dict):
        raise ConfigError(f"campaign config {config_fp} must be a mapping, "
                          f"received {type(config).__name__}")
    return config


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, '1')
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, received {raw!r}")
    if n < 1:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, received {raw!r}")
    return n


class CampaignModel(xs.Model):
    """Lightweight subclass of `xsimlab.Model`. Provides a framework for
    running a verification campaign: seed and algebra setup, one process per
    suite and the report assembler, with default arguments.
    """
    PROCESSES = {
        'setup_seed': SeedGenerator,
        'setup_campaign': SetupCampaign,
        'report': ReportAssembler,
    }
    RUNNER_DEFAULTS = {
        'clocks': {
            'batch': np.arange(2)
        },
        'input_vars': {
            'setup_campaign__p_grid': [4. / 3., 2., 3., 4.],
        },
        'output_vars': {
            'report__document': None,
            'report__batch_worst': 'batch',
        }
    }

    def __init__(self, processes: dict = None, suites: Sequence[str] = None):
        if processes is None:
            processes = self.PROCESSES.copy()
            for name in (SUITES if suites is None else suites):
                if name not in SUITES:
                    raise ConfigError(f"unknown suite {name!r}; expected one of {list(SUITES)}")
                processes[name] = SUITES[name]
        super(CampaignModel, self).__init__(processes)
        assert not hasattr(self, 'in_ds')
        assert not hasattr(self, 'out_ds')

    @property
    def suites(self) -> list:
        return [name for name in self.all_vars_dict if name in SUITES]

    def input_vars_from_config(self, config_fp: str) -> dict:
        """Input variables of a config file; the reserved campaign keys are
        left out."""
        if config_fp is None:
            if hasattr(self, 'config_fp'):
                config_fp = self.config_fp
            else:
                logging.info('No path to config (`config_fp`) was specified. Using model defaults.')
                return dict()
        config = read_config(config_fp)
        return {k: v for k, v in config.items() if k not in RESERVED_KEYS}

    def parse_input_vars(self, d: dict) -> dict:
        """Parse dictionary of input variables, returning a modified dictionary.
        Attempts to parse keys without the xsimlab-canonical double underscore
        denoting {process}__{variable}, dynamically assigning variables to
        processes that ingest them. Variables of suites that are not part of
        this model are dropped.
        """
        mod = dict()
        for k, v in d.items():
            used = False
            if '__' in k:
                proc, name = k.split('__', 1)
                if (proc, name) in self.input_vars:
                    mod[k] = v
                    continue
                if (proc, name) in catalog_input_vars() and proc not in self.all_vars_dict:
                    logging.info(f"suite {proc} is not run; ignoring {k}")
                    continue
                raise ValueError(
                    f"Could not find input variable {k}. Expected input variables "
                    f"are {self.input_vars}.")
            for proc, name in self.input_vars:
                if name == k:
                    used = True
                    mod[f"{proc}__{name}"] = v
            if not used:
                if any(name == k for _, name in catalog_input_vars()):
                    logging.info(f"no running suite ingests {k}; ignoring it")
                    continue
                raise ValueError(
                    f"Could not find a process that ingests variable named "
                    f"{k}. Expected input variables are {self.input_vars}.")
        return mod

    def run(self, **kwargs) -> xr.Dataset:
        self.in_ds = self.get_in_ds(**kwargs)
        threads = thread_count()
        if threads > 1:
            with dask.config.set(num_workers=threads):
                self.out_ds = self.in_ds.xsimlab.run(model=self, parallel=True, scheduler='threads')
        else:
            self.out_ds = self.in_ds.xsimlab.run(model=self)
        return self.out_ds

    def get_in_ds(self, config_fp: str = None, input_vars: dict = None,
                  output_vars: dict = None, batches: int = None, **kwargs) -> xr.Dataset:
        # Handle input_vars
        setup_kw = copy.deepcopy(getattr(self, 'RUNNER_DEFAULTS', dict()))
        setup_kw.update(kwargs)
        if batches is not None:
            if int(batches) < 1:
                raise ConfigError(f"batches must be >= 1, received {batches}")
            setup_kw['clocks'] = {'batch': np.arange(int(batches) + 1)}
        setup_kw['input_vars'].update(self.parse_input_vars(
            self.input_vars_from_config(config_fp=config_fp)))
        if input_vars is not None:
            setup_kw['input_vars'].update(self.parse_input_vars(input_vars))
        setup_kw['input_vars'] = self.parse_input_vars(setup_kw['input_vars'])

        # Handle output_vars
        if output_vars is None:
            output_vars = dict()
        if 'output_vars' in setup_kw:
            setup_kw['output_vars'].update(output_vars)

        return xs.create_setup(model=self, **setup_kw)

    def report(self) -> VerificationReport:
        """Report of the last run, without digest or runtime."""
        document = self.out_ds['report__document'].values.item()
        seed = self.in_ds['setup_seed__seed_entropy'].values.item() \
            if 'setup_seed__seed_entropy' in self.in_ds else 0
        return VerificationReport(entries_from_document(document), seed=int(seed))


@functools.lru_cache(maxsize=None)
def catalog_input_vars() -> tuple:
    """Input variables of a campaign running every suite."""
    return tuple(CampaignModel(suites=list(SUITES)).input_vars)


def campaign_inputs(config: dict) -> dict:
    """Input variables of a campaign config: reserved keys dropped and a
    mapping-form algebra normalized to its spec string."""
    out = {k: v for k, v in config.items() if k not in RESERVED_KEYS}
    for key in ('algebra', 'setup_campaign__algebra'):
        if key in out:
            out[key] = normalize_algebra_spec(out[key])
    return out


def validate_config(config: dict) -> tuple:
    """Return ``(suites, batches)`` of a campaign config."""
    version = config.get('schema_version', SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported config schema_version {version!r}; "
                          f"expected {SCHEMA_VERSION}")
    suites = config.get('suites', [])
    if suites is None:
        suites = []
    if isinstance(suites, str) or not all(isinstance(s, str) for s in suites):
        raise ConfigError(f"suites must be a list of suite names, received {suites!r}")
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise ConfigError(f"unknown suites {unknown}; expected any of {list(SUITES)}")
    batches = config.get('batches', 1)
    if isinstance(batches, bool) or not isinstance(batches, int) or batches < 1:
        raise ConfigError(f"batches must be a positive integer, received {batches!r}")
    return list(dict.fromkeys(suites)), batches


def run_campaign(config: Union[dict, str]) -> VerificationReport:
    """Run the suites of a campaign config (a mapping or a YAML/JSON file)
    and return the merged report. Identical configs give identical reports
    up to `runtime_s`."""
    if isinstance(config, str):
        config = read_config(config)
    suites, batches = validate_config(config)
    model = CampaignModel(suites=suites)
    logging.info(f"running suites {suites} over {batches} batch(es)")
    start = time.perf_counter()
    model.run(input_vars=campaign_inputs(config), batches=batches)
    report = model.report()
    report.config_digest = config_digest(config)
    report.runtime_s = time.perf_counter() - start
    logging.info(f"campaign {report.status}: {report.counts()}")
    return report
