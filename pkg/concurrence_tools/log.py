# This file is part of concurrence_tools
#
# MIT License
#
# concurrence_tools, Copyright (c) 2026 The concurrence-tools authors
#
# See the LICENSE file for the full license text.

import logging


class CustomLogFormatter(logging.Formatter):
    """
    Level-coloured log lines for stderr. Debug lines also name the emitting module.

    Args:
        use_color (bool, optional): emit ANSI colours; the CLI turns this off when
            stderr is not a terminal. Defaults to True.
    """

    grey = "\x1b[38;21m"
    yellow = "\x1b[33;21m"
    red = "\x1b[31;21m"
    bold_red = "\x1b[31;1m"
    reset = "\x1b[0m"

    strformat = "%(levelname)s - %(message)s"
    debugformat = "%(levelname)s - [%(module)s] %(message)s"

    COLORS = {
        logging.DEBUG: grey,
        logging.INFO: grey,
        logging.WARNING: yellow,
        logging.ERROR: red,
        logging.CRITICAL: bold_red,
    }

    def __init__(self, use_color: bool = True):
        super().__init__(self.strformat)
        self.use_color = use_color
        self._formatters = {}

    def _formatter(self, levelno: int) -> logging.Formatter:
        if levelno not in self._formatters:
            fmt = self.debugformat if levelno <= logging.DEBUG else self.strformat
            color = self.COLORS.get(levelno) if self.use_color else None
            if color is not None:
                fmt = color + fmt + self.reset
            self._formatters[levelno] = logging.Formatter(fmt)
        return self._formatters[levelno]

    def format(self, record):
        return self._formatter(record.levelno).format(record)
