import logging

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level="INFO", log_file=None):
    """
    Configure application logging

    Args:
        level (str): Root log level name, e.g. "INFO" or "DEBUG".
        log_file (str, optional): Also write to this file when given.

    Returns:
        logging.Logger: Logger for the calling module.
    """
    root = logging.getLogger('')
    root.setLevel(getattr(logging, str(level).upper(), logging.INFO))
    for handler in list(root.handlers):
        root.removeHandler(handler)

    formatter = logging.Formatter(LOG_FORMAT)
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)

    # Console goes to stderr so reports on stdout stay clean
    console = logging.StreamHandler()
    console.setLevel(root.level)
    console.setFormatter(formatter)
    root.addHandler(console)

    return logging.getLogger(__name__)
