import pytest

from alert_utils import console_logger, sc_alert
from alert_utils.console_logger import format_count, log_error, log_info, log_progress, set_quiet


@pytest.fixture(autouse=True)
def loud():
    set_quiet(False)
    yield
    set_quiet(False)


def test_logs_go_to_stderr(capsys):
    log_info('hello')
    captured = capsys.readouterr()
    assert captured.out == ''
    assert captured.err.strip() == f'{console_logger.TAG}hello'


def test_quiet_keeps_errors(capsys):
    set_quiet(True)
    log_info('hidden')
    log_progress(1, 2, 'chunks')
    log_error('boom')
    err = capsys.readouterr().err
    assert 'hidden' not in err
    assert 'chunks' not in err
    assert 'boom' in err


def test_format_count():
    assert format_count(12) == '12'
    assert format_count(1500) == '1.50K'
    assert format_count(2500000) == '2.50M'


def test_serverchan_url():
    assert sc_alert.serverchan_url('SCT123') == 'https://sctapi.ftqq.com/SCT123.send'
    assert sc_alert.serverchan_url('sctp42tabc') == 'https://42.push.ft07.com/send/sctp42tabc.send'
    with pytest.raises(ValueError):
        sc_alert.serverchan_url('sctpxyz')


def test_disabled_alert_does_not_post(monkeypatch):
    def fail(*args, **kwargs):
        raise AssertionError('should not post')
    monkeypatch.setattr(sc_alert.requests, 'post', fail)
    assert sc_alert.send_serverchan_alert('msg', {'serverchan': {'enabled': False}}) is False
    assert sc_alert.send_serverchan_alert('msg', {}) is False


class _Response:
    def __init__(self, payload):
        self.payload = payload

    def json(self):
        return self.payload


def test_enabled_alert_posts(monkeypatch):
    calls = []

    def post(url, json, headers, timeout):
        calls.append((url, json))
        return _Response({'code': 0})
    monkeypatch.setattr(sc_alert.requests, 'post', post)
    config = {'serverchan': {'enabled': True, 'sckey': 'SCTkey', 'title': 't'}}
    assert sc_alert.send_serverchan_alert('done', config) is True
    assert calls == [('https://sctapi.ftqq.com/SCTkey.send', {'title': 't', 'desp': 'done'})]


def test_alert_failure_is_swallowed(monkeypatch, capsys):
    def post(*args, **kwargs):
        raise ConnectionError('offline')
    monkeypatch.setattr(sc_alert.requests, 'post', post)
    config = {'serverchan': {'enabled': True, 'sckey': 'SCTkey'}}
    assert sc_alert.send_serverchan_alert('done', config) is False
    assert 'offline' in capsys.readouterr().err
