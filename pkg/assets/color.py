import sys

from colorama import Fore, just_fix_windows_console
from tqdm import tqdm

just_fix_windows_console()


def _write(message: str, end: str = "\n", file=None):
    # through tqdm so a running progress bar is not torn
    tqdm.write(message, file=file or sys.stderr, end=end)


def print_red(message: str, end="\n", file=None):
    _write(f"{Fore.RED}{message}{Fore.RESET}", end=end, file=file)


def print_yellow(message: str, end="\n", file=None):
    _write(f"{Fore.YELLOW}{message}{Fore.RESET}", end=end, file=file)


def print_green(message: str, end="\n", file=None):
    _write(f"{Fore.GREEN}{message}{Fore.RESET}", end=end, file=file)


def print_blue(message: str, end="\n", file=None):
    _write(f"{Fore.BLUE}{message}{Fore.RESET}", end=end, file=file)


if __name__ == "__main__":
    print_yellow("hello")
