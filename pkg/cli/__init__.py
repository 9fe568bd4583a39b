#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
命令行子命令：gen / verify / export
"""
