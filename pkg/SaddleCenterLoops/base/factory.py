#!/usr/bin/python
# -*- coding: utf-8 -*-
from ..errors import CommandRegistrationError


class CommandFactory(object):
    """
    Command factory that stores all the pipeline command types.
    """

    __aliases = {}
    __commands = {}

    @property
    def names(self):
        """
        Return all registered command names, sorted.

        Returns:
            list[str]: command names.
        """
        return sorted(self.__commands)

    @property
    def aliases(self):
        """
        Return aliases assigned to the command names.

        Returns:
            dict: key=alias, value=command name
        """
        return self.__aliases

    @property
    def commands(self):
        """
        Return all registered commands.

        Returns:
            dict: key=command name, value=command class
        """
        return self.__commands

    def create_command_instance(self, name=None, alias=None, **kwargs):
        """
        Create a command by its name or alias.

        Args:
            name (str): command name.
            alias (str): alternative command name (optional).
            kwargs: passed to the command constructor.

        Returns:
            PipelineCommand: new command object or None if unknown.
        """
        if alias and self.aliases.get(alias):
            name = self.aliases[alias]

        CommandClass = self.__commands.get(name)
        if not CommandClass:
            return None
        return CommandClass(**kwargs)

    def register_command(self, command, alias=None):
        """
        Register a command class.

        Args:
            command (type): PipelineCommand subclass.
            alias (str): custom alias for the command name (optional).
        """
        if command is None:
            return

        name = command.COMMAND_NAME
        if self.__commands.get(name):
            raise CommandRegistrationError(
                'command "{}" already registered! '
                'Please specify a new COMMAND_NAME.'.format(name))
        self.__commands[name] = command

        if alias:
            if self.__aliases.get(alias):
                raise CommandRegistrationError(
                    'alias "{}" already points to command "{}"'
                    .format(alias, self.__aliases.get(alias)))
            self.__aliases[alias] = name

    def clear_registered_commands(self):
        """
        clear out registered commands, to prevent conflicts on reset.
        """
        self.__commands.clear()
        self.__aliases.clear()
