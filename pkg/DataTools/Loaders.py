#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Loaders.py

JSON documents from a local path or an http(s) URL.
"""

__author__ = "Joe Porcelli"
__copyright__ = "Copyright 2024, Joe Porcelli"
__license__ = "MIT"
__version__ = "0.1.0"
__email__ = "porcej@gmail.com"
__status__ = "Development"

import json
import logging
import os
from urllib.parse import urlparse

import requests
from requests.exceptions import HTTPError, RequestException

logger = logging.getLogger(__name__)

REQUEST_TIMEOUT = 30


def is_url(file_or_url: str) -> bool:
    result = urlparse(file_or_url)
    return all([result.scheme, result.netloc])


def load_json_from_url_or_file(file_or_url: str, verify_cert: bool = True, timeout: int = REQUEST_TIMEOUT) -> dict:
    """
    Load a JSON document.

    Args:
        file_or_url (str): Local file path or http(s) URL.
        verify_cert (bool): Verify the server's TLS certificate for URLs.
        timeout (int): Request timeout in seconds.

    Returns:
        dict: The decoded document.

    Raises:
        FileNotFoundError: If the path is neither a URL nor an existing file.
        HTTPError: If the server answers with an error status.
        RequestException: If the request fails.
        ValueError: If the content is not valid JSON.
    """
    if is_url(file_or_url):
        logger.debug("Fetching %s", file_or_url)
        try:
            response = requests.get(file_or_url, verify=verify_cert, timeout=timeout)
            response.raise_for_status()
        except HTTPError as http_err:
            raise HTTPError(f"HTTP error occurred fetching {file_or_url}: {http_err}") from http_err
        except RequestException as req_err:
            raise RequestException(f"Request error occurred fetching {file_or_url}: {req_err}") from req_err
        try:
            return response.json()
        except ValueError as e:
            raise ValueError(f"Invalid JSON at {file_or_url}: {e}") from e

    if not os.path.isfile(file_or_url):
        raise FileNotFoundError(f"The file '{file_or_url}' does not exist.")
    try:
        with open(file_or_url, "r") as file:
            return json.load(file)
    except json.JSONDecodeError as e:
        raise ValueError(f"Error decoding JSON from '{file_or_url}': {e}") from e
