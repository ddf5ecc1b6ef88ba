"""Server酱告警模块 - 长任务 (普查/搜索/目录校验) 结束后推送摘要"""
import re
from typing import Any, Dict, Optional

import requests

from alert_utils.console_logger import log_warning

REQUEST_TIMEOUT = 10


def serverchan_url(sendkey: str) -> str:
    """按 sendkey 类型拼出推送地址; sctp 开头的 key 走专属域名"""
    if sendkey.startswith('sctp'):
        match = re.match(r'sctp(\d+)t', sendkey)
        if not match:
            raise ValueError('Invalid sendkey format for sctp')
        return f'https://{match.group(1)}.push.ft07.com/send/{sendkey}.send'
    return f'https://sctapi.ftqq.com/{sendkey}.send'


def send_serverchan_alert(message: str, config: Dict[str, Any], options: Optional[Dict[str, Any]] = None) -> bool:
    """发送Server酱通知

    Args:
        message: 要发送的消息内容 (Markdown)
        config: 含 serverchan 段的配置对象
        options: 额外的请求字段

    Returns:
        bool: 是否发送成功; 未启用或任何失败都返回 False, 不抛异常
    """
    sc_config = (config or {}).get('serverchan') or {}
    if not sc_config.get('enabled'):
        return False

    try:
        url = serverchan_url(sc_config['sckey'])
        params = {
            'title': sc_config.get('title', '【Life】任务完成'),
            'desp': message,
            **(options or {}),
        }
        headers = {
            'Content-Type': 'application/json;charset=utf-8'
        }
        response = requests.post(url, json=params, headers=headers, timeout=REQUEST_TIMEOUT)
        result = response.json()
        return result.get('code') == 0
    except Exception as e:
        log_warning(f'Server酱通知发送失败: {e}')
        return False
