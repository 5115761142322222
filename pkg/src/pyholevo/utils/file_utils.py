import os

from pyholevo.utils.exceptions import LoadFileError, StoreFileError

_DATA_FILE_MODE = 0o644


def load_text_from_file(file_path: str) -> str:
    """Loads UTF-8 text from file path.

    Args:
        file_path: Path to the file to read.

    Returns:
        The text read from the file specified.

    Raises:
        LoadFileError: In case the file cannot not be found or read.
    """

    try:
        with open(file_path, 'r', encoding='utf-8') as data_file:
            return data_file.read()
    except FileNotFoundError:
        raise LoadFileError('File not found: {}'.format(file_path))
    except Exception as err:
        raise LoadFileError('File could not be read: {}'.format(str(err)))


def write_text_to_file(file_path: str, text: str) -> None:
    """Writes UTF-8 text to a file, replacing previous content.

    Args:
        file_path: Path to the file the text will be written to.
        text: Content to write.

    Raises:
        StoreFileError: In case the file cannot be written.
    """

    try:
        with open(file_path, 'w', encoding='utf-8', newline='') as data_file:
            os.chmod(data_file.name, _DATA_FILE_MODE)
            data_file.write(text)
    except Exception as err:
        raise StoreFileError('Could not write data to file: {}'.format(str(err)))
