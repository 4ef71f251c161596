// Browser entry point: boot once the form exists.

import { boot } from './main';

function start(): void {
  if (document.getElementById('term')) {
    void boot(window.CROSSLEX_API_BASE ?? '');
  }
}

if (document.readyState !== 'loading') {
  start();
} else {
  document.addEventListener('DOMContentLoaded', start);
}
