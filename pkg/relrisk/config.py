"""Config module for the relational risk toolkit."""
import os
import logging

CURR_PATH = os.path.abspath(os.path.dirname(__file__))
PROJECT_BASE_PATH = os.path.abspath(os.path.join(CURR_PATH, os.pardir))
MODELS_PATH = os.path.join(CURR_PATH, 'models')

APP_NAME = 'Relational Risk Toolkit'

LOG_FORMAT = '%(levelname)s - %(asctime)s - %(name)s - %(message)s'

LOGGER = logging.getLogger(__name__)

CAUTIOUS_RULES = ['greatest', 'maximal']
"""list : Accepted rules for selecting cautious strategies.

``greatest`` keeps strategies whose security level is above every other
existing level, ``maximal`` keeps those with no strictly better level.
"""

try:
    LOG_PATH = os.environ['RELRISK_LOG_PATH']
except KeyError:
    LOG_PATH = PROJECT_BASE_PATH + '/relrisk.log'

try:
    LOG_LEVEL = os.environ['RELRISK_LOG_LEVEL'].upper()
except KeyError:
    LOG_LEVEL = 'INFO'

try:
    CAUTIOUS_RULE = os.environ['RELRISK_CAUTIOUS_RULE'].lower()
except KeyError:
    CAUTIOUS_RULE = 'greatest'

if CAUTIOUS_RULE not in CAUTIOUS_RULES:
    LOGGER.warning('Unknown RELRISK_CAUTIOUS_RULE %s, using greatest',
                   CAUTIOUS_RULE)
    CAUTIOUS_RULE = 'greatest'

try:
    MAX_LIFT_ELEMENTS = int(os.environ['RELRISK_MAX_LIFT_ELEMENTS'])
except KeyError:
    MAX_LIFT_ELEMENTS = 20
except ValueError:
    LOGGER.warning('RELRISK_MAX_LIFT_ELEMENTS must be an integer, using 20')
    MAX_LIFT_ELEMENTS = 20
