from pyholevo.exceptions import ArgumentError


class FileError(ArgumentError):
    """Error raised when there is a problem reading or writing a data file."""

    def __init__(self, message: str) -> None:
        """Creates an instance of FileError.

        Args:
            message: Message describing the error.
        """

        super().__init__(message)

    def __str__(self) -> str:
        return self.message


class LoadFileError(FileError):
    """Error raised when a file could not be loaded from disk."""

    _MESSAGE = 'Error loading file: {}'

    def __init__(self, additional_information: str) -> None:
        """Creates an instance of LoadFileError

        Args:
            additional_information: Additional information about the error.
        """
        super().__init__(self._MESSAGE.format(additional_information))


class StoreFileError(FileError):
    """Error raised when a file could not be saved to disk."""

    _MESSAGE = 'Error saving file: {}'

    def __init__(self, additional_information: str) -> None:
        """Creates an instance of StoreFileError

        Args:
            additional_information: Additional information about the error.
        """
        super().__init__(self._MESSAGE.format(additional_information))
