import logging
import sys

LOG_FORMAT = '%(asctime)s [%(levelname)s] %(name)s: %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'

# One logger per sub-package
DOMAIN_LOGGERS = ('graph', 'influence', 'selection', 'simulation', 'experiments')


def setup_logging(debug=False, stream=None):
    """
    Route every spreadlab logger to ``stream`` (stderr unless given).

    stdout carries only the tables and summaries the CLI prints.
    """
    level = logging.DEBUG if debug else logging.INFO

    root = logging.getLogger()
    root.setLevel(level)
    for handler in root.handlers[:]:
        root.removeHandler(handler)

    handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    root.addHandler(handler)

    for name in DOMAIN_LOGGERS:
        logging.getLogger(name).setLevel(level)
    logging.getLogger('joblib').setLevel(logging.WARNING)
    return root
