from lazyops.utils import logger
