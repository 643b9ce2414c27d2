from .base_metric import *
from .errors import *
