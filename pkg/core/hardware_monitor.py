import os
import platform
import sys
from typing import Any, Dict, Optional

import psutil


class HardwareMonitor:
    """Host information for run manifests and worker sizing"""

    def get_cpu_info(self) -> Dict[str, Any]:
        """Get CPU information"""
        try:
            return {
                'count': psutil.cpu_count(),
                'physical': psutil.cpu_count(logical=False),
                'load_avg': [round(x, 2) for x in psutil.getloadavg()],
            }
        except Exception as e:
            return {
                'count': os.cpu_count() or 1,
                'physical': None,
                'load_avg': [0, 0, 0],
                'error': str(e)
            }

    def get_memory_info(self) -> Dict[str, Any]:
        """Get memory information"""
        try:
            mem = psutil.virtual_memory()
            return {
                'total_gb': round(mem.total / (1024**3), 2),
                'available_gb': round(mem.available / (1024**3), 2),
                'percent': mem.percent,
            }
        except Exception as e:
            return {'error': str(e)}

    def get_platform_info(self) -> Dict[str, Any]:
        return {
            'system': platform.system(),
            'machine': platform.machine(),
            'python': sys.version.split()[0],
            'hostname': platform.node(),
        }

    def get_comprehensive_info(self) -> Dict[str, Any]:
        """Get all host information in one call"""
        return {
            'cpu': self.get_cpu_info(),
            'memory': self.get_memory_info(),
            'platform': self.get_platform_info(),
        }

    def default_threads(self) -> int:
        """Worker threads for the Monte Carlo engine: logical CPUs available to this process"""
        try:
            return max(1, len(psutil.Process().cpu_affinity()))
        except (AttributeError, psutil.Error, OSError):
            return max(1, psutil.cpu_count() or 1)


# Global hardware monitor instance
_hardware_monitor: Optional[HardwareMonitor] = None


def get_hardware_monitor() -> HardwareMonitor:
    """Get global hardware monitor instance"""
    global _hardware_monitor
    if _hardware_monitor is None:
        _hardware_monitor = HardwareMonitor()
    return _hardware_monitor
